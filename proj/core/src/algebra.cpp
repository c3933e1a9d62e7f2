#include "gk/algebra.hpp"

#include <stdexcept>

namespace gk {

namespace {

SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) s.emplace_back(k, v[k]);
    return s;
}

std::string sum_label(const AlgPtr& a, const AlgPtr& b) { return "(" + a->label() + "+" + b->label() + ")"; }

}  // namespace

AlgPtr Algebra::make(std::string label, std::size_t dim, const MulFn& basis_product, std::optional<Vec> unit,
                     std::vector<Mat> action) {
    std::vector<SparseVec> table(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Vec p = basis_product(i, j);
            if (p.size() != dim) throw std::invalid_argument("basis product has wrong dimension");
            table[i * dim + j] = to_sparse(p);
        }
    return from_sparse(std::move(label), dim, std::move(table), std::move(unit), std::move(action));
}

AlgPtr Algebra::from_sparse(std::string label, std::size_t dim, std::vector<SparseVec> table,
                            std::optional<Vec> unit, std::vector<Mat> action) {
    if (table.size() != dim * dim) throw std::invalid_argument("structure table size mismatch");
    if (unit && unit->size() != dim) throw std::invalid_argument("unit has wrong dimension");
    for (const auto& m : action)
        if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("action matrix has wrong size");
    auto a = std::make_shared<Algebra>();
    a->label_ = std::move(label);
    a->dim_ = dim;
    a->table_ = std::move(table);
    a->unit_ = std::move(unit);
    bool trivial = true;
    for (const auto& m : action)
        if (!m.is_identity()) trivial = false;
    if (!trivial) a->action_ = std::move(action);
    return a;
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("Algebra::mul dimension mismatch");
    Vec r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j].is_zero()) continue;
            const auto& p = table_[i * dim_ + j];
            if (p.empty()) continue;
            Scalar c = x[i] * y[j];
            for (const auto& [k, v] : p) r[k] += c * v;
        }
    }
    return r;
}

Mat Algebra::left_mult(const Vec& x) const {
    Mat m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) m.set_col(j, mul(x, basis(j)));
    return m;
}

Mat Algebra::right_mult(const Vec& x) const {
    Mat m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) m.set_col(j, mul(basis(j), x));
    return m;
}

Mat Algebra::act(std::size_t g) const {
    if (action_.empty()) return Mat::identity(dim_);
    return action_.at(g);
}

AlgPtr Algebra::relabel(std::string label) const {
    auto a = std::make_shared<Algebra>(*this);
    a->label_ = std::move(label);
    return a;
}

AlgPtr Algebra::with_action(std::vector<Mat> action, std::string label) const {
    return from_sparse(label.empty() ? label_ : std::move(label), dim_, table_, unit_, std::move(action));
}

std::optional<Vec> find_unit(const Algebra& a) {
    const std::size_t n = a.dim();
    if (n == 0) return Vec{};
    // Unknown u; equations u*b_j = b_j and b_j*u = b_j, linear in u.
    Mat lhs(2 * n * n, n);
    Vec rhs(2 * n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [k, v] : a.product(i, j)) lhs((j * n + k), i) += v;
            for (const auto& [k, v] : a.product(j, i)) lhs(n * n + j * n + k, i) += v;
        }
    for (std::size_t j = 0; j < n; ++j) {
        rhs[j * n + j] = 1;
        rhs[n * n + j * n + j] = 1;
    }
    LinearSolution s = solve_linear(lhs, rhs);
    if (!s.consistent) return std::nullopt;
    return s.particular;
}

AlgebraReport check_algebra(const Algebra& a) {
    AlgebraReport r;
    const std::size_t n = a.dim();
    // (b_i b_j) b_k and b_i (b_j b_k) straight from the sparse table.
    Vec lhs(n), rhs(n);
    for (std::size_t i = 0; i < n && r.associative; ++i)
        for (std::size_t j = 0; j < n && r.associative; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                for (auto& c : lhs) c = Scalar();
                for (auto& c : rhs) c = Scalar();
                for (const auto& [l, c] : a.product(i, j))
                    for (const auto& [m, v] : a.product(l, k)) lhs[m] += c * v;
                for (const auto& [l, c] : a.product(j, k))
                    for (const auto& [m, v] : a.product(i, l)) rhs[m] += c * v;
                if (lhs != rhs) {
                    r.associative = false;
                    r.witness = "associativity fails at basis triple (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")";
                    break;
                }
            }
    if (a.unit()) {
        r.unital = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (a.mul(*a.unit(), a.basis(i)) != a.basis(i) || a.mul(a.basis(i), *a.unit()) != a.basis(i)) {
                r.unit_valid = false;
                if (r.witness.empty()) r.witness = "declared unit fails on basis element " + std::to_string(i);
                break;
            }
        }
    }
    Subspace products(n);
    for (std::size_t i = 0; i < n && products.dim() < n; ++i)
        for (std::size_t j = 0; j < n && products.dim() < n; ++j) products.add(a.mul(a.basis(i), a.basis(j)));
    if (products.dim() < n) {
        r.quadratik = false;
        if (r.witness.empty())
            r.witness = "span of products has dimension " + std::to_string(products.dim()) + " < " +
                        std::to_string(n);
    }
    return r;
}

AlgebraHom::AlgebraHom(AlgPtr s, AlgPtr t, Mat m, std::string l)
    : source(std::move(s)), target(std::move(t)), matrix(std::move(m)), label(std::move(l)) {
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
        throw std::invalid_argument("hom '" + label + "' matrix has wrong shape: " + std::to_string(matrix.rows()) +
                                    "x" + std::to_string(matrix.cols()) + " for " + source->label() + " -> " +
                                    target->label());
}

AlgebraHom AlgebraHom::then(const AlgebraHom& g, std::string l) const {
    if (target->dim() != g.source->dim())
        throw std::invalid_argument("composition of '" + label + "' and '" + g.label + "' is ill-typed");
    if (l.empty()) l = label + ";" + g.label;
    return AlgebraHom(source, g.target, g.matrix * matrix, std::move(l));
}

AlgebraHom AlgebraHom::identity(const AlgPtr& a) { return AlgebraHom(a, a, Mat::identity(a->dim()), "id_" + a->label()); }

AlgebraHom AlgebraHom::zero(const AlgPtr& s, const AlgPtr& t) {
    return AlgebraHom(s, t, Mat(t->dim(), s->dim()), "0");
}

HomReport check_hom(const SemigroupG& g, const AlgebraHom& h) {
    HomReport r;
    const auto& A = *h.source;
    const auto& B = *h.target;
    for (std::size_t i = 0; i < A.dim() && r.multiplicative; ++i)
        for (std::size_t j = 0; j < A.dim(); ++j) {
            if (h(A.mul(A.basis(i), A.basis(j))) != B.mul(h(A.basis(i)), h(A.basis(j)))) {
                r.multiplicative = false;
                r.witness = h.label + " not multiplicative at basis pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ")";
                break;
            }
        }
    if (!(A.has_trivial_action() && B.has_trivial_action())) {
        for (std::size_t x = 0; x < g.size() && r.equivariant; ++x)
            if (B.act(x) * h.matrix != h.matrix * A.act(x)) {
                r.equivariant = false;
                if (r.witness.empty()) r.witness = h.label + " not equivariant at g=" + g.name(x);
            }
    }
    r.injective = rank(h.matrix) == A.dim();
    return r;
}

bool homs_equal(const AlgebraHom& a, const AlgebraHom& b) {
    return a.source->label() == b.source->label() && a.target->label() == b.target->label() && a.matrix == b.matrix;
}

AlgPtr base_field(const SemigroupG&, std::string label) {
    return Algebra::make(std::move(label), 1, [](std::size_t, std::size_t) { return Vec{Scalar(1)}; }, Vec{Scalar(1)});
}

AlgPtr zero_algebra(std::string label) {
    return Algebra::from_sparse(std::move(label), 0, {}, Vec{});
}

AlgPtr diagonal_algebra(std::size_t n, std::string label) {
    if (label.empty()) label = "D" + std::to_string(n);
    Vec unit(n, Scalar(1));
    return Algebra::make(
        std::move(label), n,
        [n](std::size_t i, std::size_t j) {
            Vec v(n);
            if (i == j) v[i] = 1;
            return v;
        },
        unit);
}

AlgPtr direct_sum(const AlgPtr& a, const AlgPtr& b, std::string label) {
    const std::size_t da = a->dim(), db = b->dim(), n = da + db;
    std::vector<SparseVec> table(n * n);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) table[i * n + j] = a->product(i, j);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            SparseVec p = b->product(i, j);
            for (auto& [k, v] : p) k += da;
            table[(da + i) * n + (da + j)] = std::move(p);
        }
    std::optional<Vec> unit;
    if (a->unit() && b->unit()) unit = concat(*a->unit(), *b->unit());
    std::vector<Mat> action;
    if (!a->has_trivial_action() || !b->has_trivial_action()) {
        std::size_t gs = a->has_trivial_action() ? b->action().size() : a->action().size();
        for (std::size_t g = 0; g < gs; ++g) action.push_back(Mat::block_diag(a->act(g), b->act(g)));
    }
    return Algebra::from_sparse(label.empty() ? sum_label(a, b) : std::move(label), n, std::move(table),
                                std::move(unit), std::move(action));
}

AlgPtr matrix_algebra(std::size_t n, const AlgPtr& a, const std::vector<Mat>& sigma, std::string label) {
    if (n == 0) throw std::invalid_argument("matrix size must be positive");
    const std::size_t d = a->dim(), N = n * n * d;
    std::vector<SparseVec> table(N * N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    for (std::size_t k2 = 0; k2 < d; ++k2) {
                        // (e_ij a_k)(e_jl a_k2) = e_il a_k a_k2
                        SparseVec p = a->product(k, k2);
                        for (auto& [idx, v] : p) idx += (i * n + l) * d;
                        table[((i * n + j) * d + k) * N + ((j * n + l) * d + k2)] = std::move(p);
                    }
    std::optional<Vec> unit;
    if (a->unit()) {
        Vec u(N);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < d; ++k) u[(i * n + i) * d + k] = (*a->unit())[k];
        unit = std::move(u);
    }
    std::vector<Mat> action;
    bool sigma_trivial = true;
    for (const auto& s : sigma)
        if (!s.is_identity()) sigma_trivial = false;
    if (!sigma_trivial || !a->has_trivial_action()) {
        std::size_t gs = !sigma.empty() ? sigma.size() : a->action().size();
        for (std::size_t g = 0; g < gs; ++g)
            action.push_back(kron(sigma.empty() ? Mat::identity(n * n) : sigma[g], a->act(g)));
    }
    if (label.empty()) label = "M" + std::to_string(n) + "(" + a->label() + ")";
    return Algebra::from_sparse(std::move(label), N, std::move(table), std::move(unit), std::move(action));
}

AlgPtr tensor(const AlgPtr& a, const AlgPtr& b, std::string label) {
    const std::size_t da = a->dim(), db = b->dim(), N = da * db;
    std::vector<SparseVec> table(N * N);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k)
                for (std::size_t l = 0; l < db; ++l) {
                    SparseVec p;
                    for (const auto& [x, vx] : a->product(i, k))
                        for (const auto& [y, vy] : b->product(j, l)) p.emplace_back(x * db + y, vx * vy);
                    table[(i * db + j) * N + (k * db + l)] = std::move(p);
                }
    std::optional<Vec> unit;
    if (a->unit() && b->unit()) {
        Vec u(N);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j) u[i * db + j] = (*a->unit())[i] * (*b->unit())[j];
        unit = std::move(u);
    }
    std::vector<Mat> action;
    if (!a->has_trivial_action() || !b->has_trivial_action()) {
        std::size_t gs = a->has_trivial_action() ? b->action().size() : a->action().size();
        for (std::size_t g = 0; g < gs; ++g) action.push_back(kron(a->act(g), b->act(g)));
    }
    if (label.empty()) label = "(" + a->label() + "x" + b->label() + ")";
    return Algebra::from_sparse(std::move(label), N, std::move(table), std::move(unit), std::move(action));
}

AlgPtr endomorphism_algebra(std::size_t n, std::string label, std::vector<Mat> action) {
    const std::size_t N = n * n;
    std::vector<SparseVec> table(N * N);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t q = 0; q < n; ++q) table[(r * n + c) * N + (c * n + q)] = {{r * n + q, Scalar(1)}};
    if (label.empty()) label = "End" + std::to_string(n);
    return Algebra::from_sparse(std::move(label), N, std::move(table), Mat::identity(n).flatten(), std::move(action));
}

AlgebraHom sum_inclusion(const AlgPtr& sum, const AlgPtr& part, std::size_t offset) {
    Mat m(sum->dim(), part->dim());
    for (std::size_t k = 0; k < part->dim(); ++k) m(offset + k, k) = 1;
    return AlgebraHom(part, sum, std::move(m), "in_" + part->label());
}

AlgebraHom sum_projection(const AlgPtr& sum, const AlgPtr& part, std::size_t offset) {
    Mat m(part->dim(), sum->dim());
    for (std::size_t k = 0; k < part->dim(); ++k) m(k, offset + k) = 1;
    return AlgebraHom(sum, part, std::move(m), "pr_" + part->label());
}

Mat inner_matrix_action(std::size_t n, const Mat& u, const Mat& u_inv) {
    Mat m(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // u e_ij u^{-1} = sum_{a,b} u_ai (u^{-1})_jb e_ab
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) m(a * n + b, i * n + j) = u(a, i) * u_inv(j, b);
        }
    return m;
}

AlgebraHom matrix_amplify(const AlgebraHom& phi, std::size_t n, const AlgPtr& mn_source, const AlgPtr& mn_target) {
    return AlgebraHom(mn_source, mn_target, kron(Mat::identity(n * n), phi.matrix), phi.label + "(x)id" + std::to_string(n));
}

Mat corner_matrix(std::size_t n, std::size_t dim, std::size_t k) {
    Mat m(n * n * dim, dim);
    for (std::size_t a = 0; a < dim; ++a) m((k * n + k) * dim + a, a) = 1;
    return m;
}

Ambient Ambient::of(const AlgPtr& a) {
    Ambient amb;
    amb.dim = a->dim();
    amb.mul = [a](const Vec& x, const Vec& y) { return a->mul(x, y); };
    amb.unit = a->unit();
    return amb;
}

Ambient Ambient::endomorphisms(std::size_t n) {
    Ambient amb;
    amb.dim = n * n;
    amb.mul = [n](const Vec& x, const Vec& y) {
        return (Mat::unflatten(n, n, x) * Mat::unflatten(n, n, y)).flatten();
    };
    amb.unit = Mat::identity(n).flatten();
    return amb;
}

std::vector<Vec> closure(const Ambient& amb, const std::vector<Vec>& gens, const std::vector<Mat>& operators) {
    Subspace s(amb.dim);
    std::vector<Vec> queue;
    for (const auto& g : gens)
        if (s.add(g)) queue.push_back(g);
    std::size_t done = 0;
    while (done < queue.size()) {
        Vec v = queue[done++];
        std::vector<Vec> fresh;
        for (const auto& op : operators) fresh.push_back(op.apply(v));
        for (std::size_t k = 0; k < done; ++k) {
            fresh.push_back(amb.mul(v, queue[k]));
            fresh.push_back(amb.mul(queue[k], v));
        }
        for (auto& f : fresh)
            if (s.add(f)) queue.push_back(f);
    }
    return s.basis();
}

Subalgebra subalgebra_from_span(const Ambient& amb, const std::vector<Vec>& gens, std::string label,
                                std::vector<Mat> action_on_ambient) {
    Subalgebra sub{nullptr, Subspace(amb.dim, gens), Mat()};
    const auto& b = sub.span.basis();
    const std::size_t d = b.size();
    sub.embedding = Mat::from_cols(amb.dim, b);
    std::vector<SparseVec> table(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto c = sub.span.coords(amb.mul(b[i], b[j]));
            if (!c) throw std::runtime_error("span '" + label + "' not closed under product at basis pair (" +
                                             std::to_string(i) + "," + std::to_string(j) + ")");
            table[i * d + j] = to_sparse(*c);
        }
    std::optional<Vec> unit;
    if (amb.unit) unit = sub.span.coords(*amb.unit);
    std::vector<Mat> action;
    for (const auto& m : action_on_ambient) action.push_back(restrict_map(sub.span, m, label));
    auto alg = Algebra::from_sparse(label, d, std::move(table), std::nullopt, std::move(action));
    if (!unit) unit = find_unit(*alg);
    if (unit) alg = Algebra::from_sparse(label, d, [&] {
                        std::vector<SparseVec> t(d * d);
                        for (std::size_t i = 0; i < d; ++i)
                            for (std::size_t j = 0; j < d; ++j) t[i * d + j] = alg->product(i, j);
                        return t;
                    }(), unit, alg->action());
    sub.algebra = std::move(alg);
    return sub;
}

Mat restrict_map(const Subspace& sub, const Mat& ambient_map, const std::string& what) {
    const auto& b = sub.basis();
    Mat m(b.size(), b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        auto c = sub.coords(ambient_map.apply(b[j]));
        if (!c) throw std::runtime_error("subspace '" + what + "' not invariant under a map (basis vector " +
                                         std::to_string(j) + ")");
        m.set_col(j, *c);
    }
    return m;
}

std::vector<Mat> restrict_maps(const Subalgebra& sub, const std::vector<Mat>& maps) {
    std::vector<Mat> out;
    for (const auto& m : maps) out.push_back(restrict_map(sub.span, m, sub.algebra->label()));
    return out;
}

}  // namespace gk
