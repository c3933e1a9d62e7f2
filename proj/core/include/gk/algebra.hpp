#pragma once

#include "gk/linalg.hpp"
#include "gk/semigroup.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gk {

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

class Algebra;
using AlgPtr = std::shared_ptr<const Algebra>;

// Finite-dimensional associative algebra over Q(i) by structure constants,
// together with its default G-action (one matrix per semigroup element;
// empty means the trivial action).
class Algebra {
public:
    using MulFn = std::function<Vec(std::size_t, std::size_t)>;

    static AlgPtr make(std::string label, std::size_t dim, const MulFn& basis_product,
                       std::optional<Vec> unit = std::nullopt, std::vector<Mat> action = {});
    static AlgPtr from_sparse(std::string label, std::size_t dim, std::vector<SparseVec> table,
                              std::optional<Vec> unit = std::nullopt, std::vector<Mat> action = {});

    const std::string& label() const { return label_; }
    std::size_t dim() const { return dim_; }
    const std::optional<Vec>& unit() const { return unit_; }
    const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Vec mul(const Vec& x, const Vec& y) const;
    Vec basis(std::size_t i) const { return unit_vec(dim_, i); }
    Mat left_mult(const Vec& x) const;
    Mat right_mult(const Vec& x) const;

    bool has_trivial_action() const { return action_.empty(); }
    const std::vector<Mat>& action() const { return action_; }
    // alpha_g as a matrix; identity for the trivial action.
    Mat act(std::size_t g) const;

    // Same algebra, new label and/or action.
    AlgPtr relabel(std::string label) const;
    AlgPtr with_action(std::vector<Mat> action, std::string label = {}) const;

private:
    std::string label_;
    std::size_t dim_ = 0;
    std::vector<SparseVec> table_;
    std::optional<Vec> unit_;
    std::vector<Mat> action_;
};

// Find a unit by solving the linear system u*b_i = b_i = b_i*u.
std::optional<Vec> find_unit(const Algebra& a);

struct AlgebraReport {
    bool associative = true;
    bool unital = false;
    bool unit_valid = true;
    bool quadratik = true;
    std::string witness;  // first failing triple / shortfall
    bool ok() const { return associative && unit_valid && quadratik; }
};

AlgebraReport check_algebra(const Algebra& a);

// Linear map between algebras; the matrix is target-dim x source-dim.
struct AlgebraHom {
    AlgPtr source;
    AlgPtr target;
    Mat matrix;
    std::string label;

    AlgebraHom() = default;
    AlgebraHom(AlgPtr s, AlgPtr t, Mat m, std::string l = {});

    Vec operator()(const Vec& x) const { return matrix.apply(x); }
    // Diagrammatic composition: (this).then(g) = g o this.
    AlgebraHom then(const AlgebraHom& g, std::string label = {}) const;

    static AlgebraHom identity(const AlgPtr& a);
    static AlgebraHom zero(const AlgPtr& s, const AlgPtr& t);
};

struct HomReport {
    bool multiplicative = true;
    bool equivariant = true;
    bool injective = true;
    std::string witness;
    bool ok() const { return multiplicative && equivariant; }
};

// Equivariance is checked against the default actions of source and target.
HomReport check_hom(const SemigroupG& g, const AlgebraHom& h);
bool homs_equal(const AlgebraHom& a, const AlgebraHom& b);

// ---- standard constructions -------------------------------------------------

AlgPtr base_field(const SemigroupG& g, std::string label = "Qi");
AlgPtr zero_algebra(std::string label = "0");
AlgPtr diagonal_algebra(std::size_t n, std::string label = {});
AlgPtr direct_sum(const AlgPtr& a, const AlgPtr& b, std::string label = {});
// M_n(A) with basis index (i*n + j)*dim(A) + k for e_ij (x) a_k. The action is
// sigma (x) alpha, with sigma given as n^2 x n^2 matrices on M_n (trivial if
// empty).
AlgPtr matrix_algebra(std::size_t n, const AlgPtr& a, const std::vector<Mat>& sigma = {},
                      std::string label = {});
// A (x) B with basis index i*dim(B) + j and action alpha (x) beta.
AlgPtr tensor(const AlgPtr& a, const AlgPtr& b, std::string label = {});
// End(K^n) with basis E_rc at index r*n + c (row-major flattening).
AlgPtr endomorphism_algebra(std::size_t n, std::string label = {}, std::vector<Mat> action = {});

// Inclusions and projections of a direct sum.
AlgebraHom sum_inclusion(const AlgPtr& sum, const AlgPtr& part, std::size_t offset);
AlgebraHom sum_projection(const AlgPtr& sum, const AlgPtr& part, std::size_t offset);

// Matrix units of M_n as n^2 x n^2 action matrices: the inner action ad(u).
Mat inner_matrix_action(std::size_t n, const Mat& u, const Mat& u_inv);
// phi (x) id_{M_n}: M_n(A) -> M_n(B).
AlgebraHom matrix_amplify(const AlgebraHom& phi, std::size_t n, const AlgPtr& mn_source,
                          const AlgPtr& mn_target);
// Canonical corner a -> e_kk (x) a in M_n(A).
Mat corner_matrix(std::size_t n, std::size_t dim, std::size_t k);

// ---- subalgebras of an ambient algebra ----------------------------------------

// An ambient associative algebra given only by its dimension and product,
// e.g. End(V) with matrix multiplication, which is too large to tabulate.
struct Ambient {
    std::size_t dim = 0;
    std::function<Vec(const Vec&, const Vec&)> mul;
    std::optional<Vec> unit;

    static Ambient of(const AlgPtr& a);
    static Ambient endomorphisms(std::size_t n);  // flattened row-major n x n matrices
};

// A subalgebra of an ambient algebra together with its tabulated structure
// constants. `coords` maps ambient vectors in the span to coordinates.
struct Subalgebra {
    AlgPtr algebra;
    Subspace span;
    Mat embedding;  // ambient-dim x dim, columns are the chosen basis

    Vec to_ambient(const Vec& x) const { return embedding.apply(x); }
    std::optional<Vec> coords(const Vec& y) const { return span.coords(y); }
};

// Tabulate span(gens) as an algebra. Throws std::runtime_error with a witness
// if the span is not closed under the product.
Subalgebra subalgebra_from_span(const Ambient& amb, const std::vector<Vec>& gens, std::string label,
                                std::vector<Mat> action_on_ambient = {});
// Smallest subalgebra containing gens, also closed under the given operators.
std::vector<Vec> closure(const Ambient& amb, const std::vector<Vec>& gens,
                         const std::vector<Mat>& operators = {});
// Restrict linear maps on the ambient to an invariant subspace.
std::vector<Mat> restrict_maps(const Subalgebra& sub, const std::vector<Mat>& maps);
Mat restrict_map(const Subspace& sub, const Mat& ambient_map, const std::string& what);

}  // namespace gk
