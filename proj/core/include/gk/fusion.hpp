#pragma once

#include "gk/words.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gk {

// A fusion that the theory does not provide in the requested setting. The
// message quotes the condition under which it would be possible.
class Refusal : public std::runtime_error {
public:
    Refusal(std::string row, std::string condition)
        : std::runtime_error(row + ": " + condition), row_(std::move(row)), condition_(std::move(condition)) {}
    const std::string& row() const { return row_; }
    const std::string& condition() const { return condition_; }

private:
    std::string row_;
    std::string condition_;
};

// A construction whose own verification failed.
class CertificateFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FusionResult {
    L1Element out;
    std::vector<DiagramCertificate> certificates;
    std::vector<DiagramReport> reports;  // all ok, otherwise CertificateFailure was thrown
    std::optional<MiddleSpace> middle;   // set when phi . z went through the pullback
};

// phi . z for phi: A' -> A. Injective phi precomposes s+-; otherwise X is
// replaced by the pullback X box_{s- o phi} A', which `pullback` forces.
FusionResult fuse_hom_left(const SemigroupG& g, const AlgebraHom& phi, const L1Element& z, bool pullback = false);

// z . phi for phi: B -> B'. The exit corner must be an iso or a canonical
// matrix corner; phi then moves through it as phi (x) id into psi.
FusionResult fuse_hom_right(const SemigroupG& g, const L1Element& z, const AlgebraHom& phi);

// z . phi absorbed into the sequence: X becomes M_n(Y) (+) A with
// u+-(a) = (theta(s+-(a)), a), theta(x) = (phi (x) id)(x p) for the unit p of
// J = M_n(B), and the exit becomes the canonical corner Y -> M_n(Y). Needs a
// very special z with a canonical matrix exit and unital J.
struct AbsorbedFusion {
    FusionResult fusion;
    Corner exit;
    AlgebraHom theta;
};
AbsorbedFusion fuse_hom_right_absorbing(const SemigroupG& g, const L1Element& z, const AlgebraHom& phi);

// e^-1 . z for a corner e: A -> M_n(A): u+- = s+- (x) id on M_n(X).
FusionResult fuse_inv_corner_left(const SemigroupG& g, const Corner& e, const L1Element& z);

// z . e^-1 for a corner e: C -> B: the exit becomes e followed by the old one.
FusionResult fuse_inv_corner_right(const SemigroupG& g, const L1Element& z, const Corner& e);

// Increasing idempotents p_1 <= ... <= p_N with p_N a unit of the carrier.
struct ApproxUnit {
    AlgPtr carrier;
    std::vector<Vec> chain;
};

struct ApproxUnitReport {
    bool ok = true;
    std::size_t index = 0;  // stabilization index (1-based), the top of the chain
    std::string witness;
};
ApproxUnitReport check_approx_unit(const ApproxUnit& u);

// A linear map A -> End(V) given on the basis of A.
struct OperatorHom {
    AlgPtr source;
    std::size_t vdim = 0;
    std::vector<Mat> images;
    std::vector<Mat> v_action;  // action on V, empty means trivial

    Mat operator()(const Vec& a) const;
};

struct AdjointableExtension {
    OperatorAlgebra domain;     // the adjointable operators of A over itself
    std::vector<Mat> images;    // phi-bar on the basis of domain
    std::size_t index = 0;      // stabilization index used for the limit
    OperatorHom phi;
    Vec top;                    // p_N
    bool multiplicative = false;
    bool equivariant = false;
    bool extends = false;
    // Bimodule identities for the optional second map s.
    bool bimodule_input = true;  // s(ab) = s(a) phi(b) = phi(a) s(b)
    bool bimodule_left = true;   // s(a V) = s(a) phi-bar(V) and s(V a) = phi-bar(V) s(a)
    bool bimodule_bar = true;    // s-bar(U V) = s-bar(U) phi-bar(V) = phi-bar(U) s-bar(V)
    std::string witness;

    bool ok() const {
        return multiplicative && equivariant && extends && bimodule_input && bimodule_left && bimodule_bar;
    }
    Mat apply(const Mat& u) const;  // phi-bar of an operator in domain
};

// phi-bar(U)(x) = phi(U(p_N))(x). Throws Refusal when phi(p_N) is not the
// identity on V (with a witness vector) or when the chain is malformed.
AdjointableExtension extend_to_adjointables(const SemigroupG& g, const OperatorHom& phi, const ApproxUnit& u,
                                            const std::optional<OperatorHom>& s = std::nullopt);

// Delta_s . u = (id_X - f.s) . v, given a certified witness u = iota . v.
// The witness diagram runs from u (top) to v (bottom) with k = id and e = iota.
struct SplitFusion {
    MorphismWord word;
    std::vector<std::pair<long, L1Element>> summands;
    std::vector<DiagramReport> certificates;
    bool converse = false;  // iota . z normalizes to u
    Derivation converse_log;
};
SplitFusion fuse_split(const SemigroupG& g, const SplitExactSeq& seq, const DiagramCertificate& witness);

// Delta_A . z for the unitization sequence 0 -> A -> A+ -> c -> 0, through
// the extension of z to A+ over X+.
SplitFusion fuse_unitization_split(const SemigroupG& g, const L1Element& z);

}  // namespace gk
