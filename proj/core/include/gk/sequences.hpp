#pragma once

#include "gk/modules.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gk {

// 0 -> J -iota-> X -f-> A -> 0 with an algebra split s.
struct SplitExactSeq {
    std::string label;
    AlgebraHom iota;
    AlgebraHom f;
    AlgebraHom s;

    const AlgPtr& J() const { return iota.source; }
    const AlgPtr& X() const { return iota.target; }
    const AlgPtr& A() const { return s.source; }
};

struct CheckReport {
    bool ok = true;
    std::string condition;  // which condition failed
    std::string witness;
};

// The unique linear f with f o iota = 0 and f o s = id; throws when
// X is not the linear direct sum iota(J) + s(A).
AlgebraHom split_projection(const AlgebraHom& iota, const AlgebraHom& s, std::string label = {});
SplitExactSeq make_split(std::string label, const AlgebraHom& iota, const AlgebraHom& s);
CheckReport validate_split(const SemigroupG& g, const SplitExactSeq& seq);
// M_n (x) S with maps iota (x) id, f (x) id, s (x) id; sigma acts on M_n.
SplitExactSeq tensor_split(const SplitExactSeq& seq, std::size_t n, const std::vector<Mat>& sigma);
// 0 -> A -> A+ -> c -> 0 with s(c) = c.1.
SplitExactSeq unitization_split(const SemigroupG& g, const AlgPtr& a);

// Is iota(J) a two-sided ideal of X? Returns a witness product otherwise.
std::optional<std::string> ideal_witness(const AlgebraHom& iota);

// M box_s A = {(j,0) + (s(a),a)} inside M (+) A, ideal J given by iota: J -> M.
struct MiddleSpace {
    AlgPtr ambient;     // M (+) A
    Subalgebra carrier;
    AlgebraHom to_ambient;  // carrier -> M (+) A
    AlgebraHom proj_m;      // carrier -> M
    AlgebraHom proj_a;      // carrier -> A
    AlgebraHom ideal;       // J -> carrier, j -> (iota(j), 0)
    AlgebraHom graph;       // A -> carrier, a -> (s(a), a)
    const AlgPtr& algebra() const { return carrier.algebra; }
};

MiddleSpace middle_space(const SemigroupG& g, const AlgebraHom& iota, const AlgebraHom& s, const std::string& label);
// J (+)_s A with (j1 + a1)(j2 + a2) = j1 j2 + j1 s(a2) + s(a1) j2 (+) a1 a2, computed inside M.
AlgPtr oplus_algebra(const AlgebraHom& iota, const AlgebraHom& s, const std::string& label);
// zeta(j + a) = (iota(j) + s(a), a) and its inverse, both checked.
std::pair<AlgebraHom, AlgebraHom> zeta(const SemigroupG& g, const AlgPtr& oplus, const MiddleSpace& ms,
                                       const AlgebraHom& iota);

// rho: X -> End(E) injective hom, S and T module actions on E. The blocks are
// delta^ab_g(x) = rho^-1(S^a_g rho(x) S^b_{g*}) with S^1 = S, S^2 = T.
struct Realization {
    std::size_t edim = 0;
    std::vector<Mat> s;
    std::vector<Mat> t;
    Mat rho;  // edim^2 x dim X
};

struct M2Space {
    CornerAction delta;  // n = 2 on the carrier X
    std::optional<Realization> realization;

    const AlgPtr& x() const { return delta.carrier; }
    const Mat& gamma_minus(std::size_t g) const { return delta.block(g, 0, 0); }
    const Mat& gamma_plus(std::size_t g) const { return delta.block(g, 1, 1); }
};

M2Space trivial_m2(const SemigroupG& g, const AlgPtr& x);
M2Space m2_from_realization(const SemigroupG& g, const AlgPtr& x, Realization r);
// E = X, rho = left multiplication, S = delta^11, T = delta^21; nullopt when
// that does not reproduce the blocks.
std::optional<Realization> canonical_realization(const SemigroupG& g, const M2Space& m);
CheckReport check_m2(const SemigroupG& g, const M2Space& m);
// Blocks on End(E) induced by a realization: Y -> S^a_g Y S^b_{g*}.
AmbientCornerAction realization_ambient(const SemigroupG& g, const Realization& r);

// Exit e^-1 (psi absent) or psi . f^-1 with psi: J -> K and f: B -> K.
struct Exit {
    Corner corner;
    std::optional<AlgebraHom> psi;
};

// Extended double split-exact sequence; its word is
// s+ . f2 . f1^-1 . Delta_{s-} . [psi] . e^-1, a morphism A -> B.
struct L1Element {
    std::string label;
    AlgPtr b, j, x, a;
    Exit exit;
    AlgebraHom iota;
    AlgebraHom s_minus;
    AlgebraHom s_plus;
    M2Space m2;
};

AlgebraHom derive_f(const L1Element& z);

// The algebras and corner maps around the M2-space: X with gamma+ (label
// suffixed "[+]"), M_2(X) with delta, f1 = upper left and f2 = lower right.
struct M2Corners {
    AlgPtr m2;
    AlgPtr x_plus;
    Corner f1;
    AlgebraHom f2;
};
M2Corners m2_corners(const SemigroupG& g, const L1Element& z);
SplitExactSeq minus_split(const L1Element& z);

struct L1Report : CheckReport {
    std::optional<AlgebraHom> f;
};

// Conditions (a)-(g) plus the realization consistency when present.
L1Report validate_l1(const SemigroupG& g, const L1Element& z);

// Speciality of the M2-space: product form, unital carrier, then the ideal
// criterion inside End(E) of the realization with J = iota(J) and Z = X.
SpecialityResult classify_m2(const SemigroupG& g, const L1Element& z);

// The level-one element with s+ = s- = s (the zero element) on a given split.
bool is_zero_element(const L1Element& z);

}  // namespace gk
