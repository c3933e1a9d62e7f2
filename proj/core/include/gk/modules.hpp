#pragma once

#include "gk/equivariance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gk {

// A finite-dimensional right A-module E with a G-action S and a spanning set
// of A-valued functionals (each a dim(A) x dim(E) matrix).
struct FunctionalModule {
    std::string label;
    AlgPtr algebra;
    std::size_t dim = 0;
    std::vector<Mat> right;   // right[k]: xi -> xi * a_k
    std::vector<Mat> action;  // S_g; empty means trivial
    std::vector<Mat> theta;

    Mat act(std::size_t g) const { return action.empty() ? Mat::identity(dim) : action[g]; }
    // Right multiplication by an arbitrary element of A.
    Mat right_mult(const Vec& a) const;

    // A over itself: right multiplication, S = alpha, functionals b -> ab.
    static FunctionalModule regular(const AlgPtr& a);
    static FunctionalModule zero(const AlgPtr& a);
    static FunctionalModule direct_sum(const FunctionalModule& e, const FunctionalModule& f);
    // A^m with the diagonal action and coordinate functionals composed with A's.
    static FunctionalModule free(const AlgPtr& a, std::size_t copies);
};

struct ModuleReport {
    bool ok = true;
    std::string witness;
};

// Module axioms, the G-action law, A-linearity and E-equivariance of each
// functional, G-invariance of span(theta) and closure under a.phi.
ModuleReport check_module(const SemigroupG& g, const FunctionalModule& m);

enum class OperatorKind { compacts, adjointables };

// A subalgebra of End(E) (flattened row-major) with the adjoint action.
struct OperatorAlgebra {
    OperatorKind kind = OperatorKind::compacts;
    std::size_t edim = 0;
    Subalgebra sub;

    const AlgPtr& algebra() const { return sub.algebra; }
    Mat op(const Vec& coords) const { return Mat::unflatten(edim, edim, sub.to_ambient(coords)); }
    std::optional<Vec> coords_of(const Mat& t) const { return sub.coords(t.flatten()); }
};

OperatorAlgebra compute_compacts(const SemigroupG& g, const FunctionalModule& m);
OperatorAlgebra compute_adjointables(const SemigroupG& g, const FunctionalModule& m);

// Smallest G-invariant subalgebra of End(V) containing the operators in
// `gens` and the identity.
Subalgebra operator_unitization(std::size_t vdim, const std::vector<Mat>& gens,
                                const std::vector<Mat>& action_on_operators, const std::string& label);

enum class CornerKind { iso, canonical_matrix, module, composite };
std::string to_string(CornerKind k);
// Corners use "generalized" for what classify_speciality calls neither.
std::string corner_class_name(Speciality s);

// A corner embedding B -> K. For canonical matrix corners K = M_n(B) and
// the image is the e_kk corner at `position`.
struct Corner {
    std::string label;
    AlgebraHom hom;
    CornerKind kind = CornerKind::iso;
    Speciality cls = Speciality::neither;
    std::size_t n = 1;
    std::size_t position = 0;
    std::vector<Mat> sigma;        // very special matrix corners: action on M_n
    std::vector<Corner> factors;   // composite: applied first to last
    std::optional<SpecialityResult> speciality;

    const AlgPtr& source() const { return hom.source; }
    const AlgPtr& target() const { return hom.target; }
};

ModuleReport check_corner(const SemigroupG& g, const Corner& c);

// B -> M_n(B), b -> b e_kk, with action sigma (x) beta on M_n(B).
Corner canonical_matrix_corner(const SemigroupG& g, const AlgPtr& b, std::size_t n, const std::vector<Mat>& sigma,
                               std::string label = {}, std::size_t position = 0);
// B -> M_n(B) with an arbitrary corner-invariant action; classified.
Corner matrix_corner(const SemigroupG& g, const CornerAction& action, std::string label = {},
                     std::size_t position = 0);
// An equivariant isomorphism regarded as a corner embedding (E = 0).
Corner iso_corner(const SemigroupG& g, const AlgebraHom& iso);
// The corner embedding a -> (xi (+) b -> 0 (+) ab) into the compacts of E (+) A.
Corner corner_embedding(const SemigroupG& g, const FunctionalModule& m, std::string label = {});
// `second` after `first`.
Corner compose_corners(const Corner& first, const Corner& second);

}  // namespace gk
