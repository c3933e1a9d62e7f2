#pragma once

#include "gk/algebra.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gk {

// Raised when a question cannot be decided with the data at hand, e.g. the
// speciality of an action on a non-unital carrier without an ambient algebra.
class Undetermined : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The commutative algebra spanned by the idempotents of G, with the
// conjugation action chi_g(e) = g e g*.
struct CAlgebra {
    AlgPtr algebra;
    std::vector<std::size_t> idempotents;  // basis k <-> idempotents[k]
    std::vector<Mat> chi;
    std::size_t unit_index = 0;  // basis index of the unit idempotent
};

CAlgebra build_c_algebra(const SemigroupG& g);

struct ActionReport {
    bool ok = true;
    std::string witness;
};

// Checks the semigroup law, multiplicativity and alpha_e(a) b = a alpha_e(b).
// An empty map list is the trivial action and always passes.
ActionReport check_action(const SemigroupG& g, const Algebra& a, const std::vector<Mat>& maps);
inline ActionReport check_action(const SemigroupG& g, const Algebra& a) { return check_action(g, a, a.action()); }

// Module action S on a right A-module E given by right multiplication
// matrices (right[k] is xi -> xi * a_k). Checks the semigroup law,
// S_g(xi a) = S_g(xi) alpha_g(a) and S_e(xi) a = xi alpha_e(a).
ActionReport check_module_action(const SemigroupG& g, const Algebra& a, const std::vector<Mat>& right,
                                 const std::vector<Mat>& s);

// Action X -> T_g X S_{g*} on flattened row-major dim(F) x dim(E) matrices.
std::vector<Mat> adjoint_action(const SemigroupG& g, const std::vector<Mat>& s, const std::vector<Mat>& t);

// The unitization A+ = A (+) c with (a,c)(a',c') = (aa' + c.a' + a.c', cc'),
// where e.a = a.e = alpha_e(a). Basis: A first, then the idempotents.
struct AdjoinedUnit {
    AlgPtr plus;
    AlgebraHom inclusion;   // A -> A+
    AlgebraHom projection;  // A+ -> c
    AlgebraHom unit_split;  // c -> A+, c -> c.1
    CAlgebra c;
};

AdjoinedUnit adjoin_unit(const SemigroupG& g, const AlgPtr& a);

// A G-action on M_n(A) that leaves every matrix corner invariant, stored in
// matrix form: blocks[g][i*n + j] acts on the (i,j) corner.
struct CornerAction {
    std::size_t n = 2;
    AlgPtr carrier;
    std::vector<std::vector<Mat>> blocks;

    const Mat& block(std::size_t g, std::size_t i, std::size_t j) const { return blocks[g][i * n + j]; }
    // The action on M_n(carrier) in the basis of matrix_algebra(n, carrier).
    Mat full(std::size_t g) const;
    std::vector<Mat> full_maps() const;
    AlgPtr algebra(std::string label = {}) const;

    // Splits a full action into blocks; throws Undetermined when some corner
    // is not invariant.
    static CornerAction from_full(std::size_t n, const AlgPtr& carrier, const std::vector<Mat>& full);
    // gamma (x) alpha, gamma given on M_n.
    static CornerAction product(std::size_t n, const AlgPtr& carrier, const std::vector<Mat>& gamma,
                                const std::vector<Mat>& alpha);
    static CornerAction trivial(std::size_t n, const AlgPtr& carrier, std::size_t group_size);
};

enum class Speciality { very_special, special, neither };
std::string to_string(Speciality s);

struct Extension {
    AlgPtr unitized;      // A+ (or Z+ in the ideal-criterion route)
    Mat embedding;        // carrier coordinates -> unitized coordinates
    AlgPtr matrix;        // M_n(unitized) carrying the extended action
    ActionReport report;  // check_action on `matrix`
    bool restricts = false;  // the extension agrees with the input on M_n(carrier)
};

struct SpecialityResult {
    Speciality cls = Speciality::neither;
    std::string route;
    // very special: delta = gamma (x) alpha
    std::vector<Mat> gamma;
    std::vector<Mat> alpha;
    std::optional<Extension> extension;
    // neither: the failing semigroup element and element outside J
    std::size_t witness_g = 0;
    Vec witness_element;
    std::string witness;
};

// Product-form test, then the unital-carrier route. Throws Undetermined for
// a non-unital carrier that is not of product form.
SpecialityResult classify_speciality(const SemigroupG& g, const CornerAction& d);

// Corner action on M_n(X) for a unital ambient X given only by its product.
struct AmbientCornerAction {
    Ambient x;
    std::size_t n = 2;
    std::vector<std::vector<Mat>> blocks;  // maps on the ambient, [g][i*n+j]
};

// The ideal criterion: with Z = J + A inside X, the restricted action on
// M_n(Z) is special with M_n(J) invariant and quotient of the form
// id (x) alpha iff J and Z are delta^11-invariant and every
// delta^ij_g(1) - delta^11_g(1) lies in J. On success the extension to
// M_n(Z+) inside M_n(X (+) c) is built and checked.
SpecialityResult classify_speciality_ambient(const SemigroupG& g, const AmbientCornerAction& d,
                                             const Subspace& j, const Subspace& z, const std::string& label);

}  // namespace gk
