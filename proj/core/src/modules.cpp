#include "gk/modules.hpp"

#include <algorithm>

namespace gk {

Mat FunctionalModule::right_mult(const Vec& a) const {
    Mat m(dim, dim);
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!a[k].is_zero()) m += a[k] * right[k];
    return m;
}

FunctionalModule FunctionalModule::regular(const AlgPtr& a) {
    FunctionalModule m;
    m.label = a->label();
    m.algebra = a;
    m.dim = a->dim();
    for (std::size_t k = 0; k < a->dim(); ++k) {
        m.right.push_back(a->right_mult(a->basis(k)));
        m.theta.push_back(a->left_mult(a->basis(k)));
    }
    m.action = a->action();
    return m;
}

FunctionalModule FunctionalModule::zero(const AlgPtr& a) {
    FunctionalModule m;
    m.label = "0";
    m.algebra = a;
    m.dim = 0;
    m.right.assign(a->dim(), Mat(0, 0));
    return m;
}

FunctionalModule FunctionalModule::direct_sum(const FunctionalModule& e, const FunctionalModule& f) {
    if (e.algebra->label() != f.algebra->label()) throw std::invalid_argument("direct sum of modules over different algebras");
    FunctionalModule m;
    m.label = "(" + e.label + "+" + f.label + ")";
    m.algebra = e.algebra;
    m.dim = e.dim + f.dim;
    for (std::size_t k = 0; k < e.right.size(); ++k) m.right.push_back(Mat::block_diag(e.right[k], f.right[k]));
    std::size_t gs = std::max(e.action.size(), f.action.size());
    for (std::size_t g = 0; g < gs; ++g) m.action.push_back(Mat::block_diag(e.act(g), f.act(g)));
    const std::size_t da = e.algebra->dim();
    for (const auto& phi : e.theta) {
        Mat t(da, m.dim);
        for (std::size_t r = 0; r < da; ++r)
            for (std::size_t c = 0; c < e.dim; ++c) t(r, c) = phi(r, c);
        m.theta.push_back(std::move(t));
    }
    for (const auto& psi : f.theta) {
        Mat t(da, m.dim);
        for (std::size_t r = 0; r < da; ++r)
            for (std::size_t c = 0; c < f.dim; ++c) t(r, e.dim + c) = psi(r, c);
        m.theta.push_back(std::move(t));
    }
    return m;
}

FunctionalModule FunctionalModule::free(const AlgPtr& a, std::size_t copies) {
    FunctionalModule m = zero(a);
    for (std::size_t k = 0; k < copies; ++k) m = direct_sum(m, regular(a));
    m.label = a->label() + "^" + std::to_string(copies);
    return m;
}

ModuleReport check_module(const SemigroupG& g, const FunctionalModule& m) {
    ModuleReport r;
    auto fail = [&](std::string w) {
        r.ok = false;
        r.witness = m.label + ": " + w;
        return r;
    };
    const Algebra& A = *m.algebra;
    const std::size_t da = A.dim();
    if (m.right.size() != da) return fail("wrong number of right multiplication matrices");
    for (std::size_t k = 0; k < da; ++k)
        for (std::size_t l = 0; l < da; ++l)
            if (m.right[l] * m.right[k] != m.right_mult(A.mul(A.basis(k), A.basis(l))))
                return fail("(xi a) b != xi (ab) at basis pair (" + std::to_string(k) + "," + std::to_string(l) + ")");
    auto act = check_module_action(g, A, m.right, m.action);
    if (!act.ok) return fail(act.witness);
    Subspace span(da * m.dim);
    for (const auto& phi : m.theta) span.add(phi.flatten());
    for (std::size_t p = 0; p < m.theta.size(); ++p) {
        const Mat& phi = m.theta[p];
        for (std::size_t k = 0; k < da; ++k)
            if (phi * m.right[k] != A.right_mult(A.basis(k)) * phi)
                return fail("functional " + std::to_string(p) + " is not A-linear");
        for (auto e : g.idempotents())
            if (phi * m.act(e) != A.act(e) * phi)
                return fail("functional " + std::to_string(p) + " is not E-equivariant at " + g.name(e));
        for (std::size_t x = 0; x < g.size(); ++x)
            if (!span.contains((A.act(x) * phi * m.act(g.star(x))).flatten()))
                return fail("span of functionals is not G-invariant at " + g.name(x));
        for (std::size_t k = 0; k < da; ++k)
            if (!span.contains((A.left_mult(A.basis(k)) * phi).flatten()))
                return fail("span of functionals is not closed under left multiplication");
    }
    return r;
}

namespace {

std::vector<Mat> operator_action(const SemigroupG& g, const FunctionalModule& m) {
    if (m.action.empty()) return {};
    return adjoint_action(g, m.action, m.action);
}

}  // namespace

OperatorAlgebra compute_compacts(const SemigroupG& g, const FunctionalModule& m) {
    std::vector<Vec> gens;
    for (std::size_t x = 0; x < m.dim; ++x) {
        Vec xi = unit_vec(m.dim, x);
        std::vector<Vec> xa;
        for (const auto& rk : m.right) xa.push_back(rk.apply(xi));
        for (const auto& phi : m.theta) {
            Mat t(m.dim, m.dim);
            for (std::size_t k = 0; k < xa.size(); ++k)
                for (std::size_t r = 0; r < m.dim; ++r) {
                    if (xa[k][r].is_zero()) continue;
                    for (std::size_t c = 0; c < m.dim; ++c) t(r, c) += xa[k][r] * phi(k, c);
                }
            gens.push_back(t.flatten());
        }
    }
    OperatorAlgebra out;
    out.kind = OperatorKind::compacts;
    out.edim = m.dim;
    out.sub = subalgebra_from_span(Ambient::endomorphisms(m.dim), gens, "K(" + m.label + ")", operator_action(g, m));
    return out;
}

OperatorAlgebra compute_adjointables(const SemigroupG& g, const FunctionalModule& m) {
    const std::size_t d = m.dim, da = m.algebra->dim(), p = m.theta.size();
    const std::size_t tvars = d * d, nvars = tvars + p * p;
    std::vector<Vec> rows;
    auto t_index = [d](std::size_t r, std::size_t c) { return r * d + c; };
    // phi_a T - sum_b c_ab theta_b = 0
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t r = 0; r < da; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                Vec row(nvars);
                for (std::size_t k = 0; k < d; ++k) row[t_index(k, c)] += m.theta[a](r, k);
                for (std::size_t b = 0; b < p; ++b) row[tvars + a * p + b] -= m.theta[b](r, c);
                rows.push_back(std::move(row));
            }
    auto commute = [&](const Mat& x) {
        // T x - x T = 0
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                Vec row(nvars);
                for (std::size_t k = 0; k < d; ++k) {
                    row[t_index(r, k)] += x(k, c);
                    row[t_index(k, c)] -= x(r, k);
                }
                rows.push_back(std::move(row));
            }
    };
    for (const auto& rk : m.right) commute(rk);
    if (!m.action.empty())
        for (auto e : g.idempotents()) commute(m.action[e]);
    std::vector<Vec> gens;
    if (d > 0) {
        Mat sys = rows.empty() ? Mat(1, nvars) : Mat::from_rows(nvars, rows);
        for (const auto& k : kernel(sys)) {
            Vec t = slice(k, 0, tvars);
            if (!is_zero(t)) gens.push_back(std::move(t));
        }
    }
    OperatorAlgebra out;
    out.kind = OperatorKind::adjointables;
    out.edim = d;
    out.sub = subalgebra_from_span(Ambient::endomorphisms(d), gens, "L(" + m.label + ")", operator_action(g, m));
    return out;
}

Subalgebra operator_unitization(std::size_t vdim, const std::vector<Mat>& gens,
                                const std::vector<Mat>& action_on_operators, const std::string& label) {
    Ambient amb = Ambient::endomorphisms(vdim);
    std::vector<Vec> v;
    for (const auto& m : gens) v.push_back(m.flatten());
    v.push_back(*amb.unit);
    auto basis = closure(amb, v, action_on_operators);
    return subalgebra_from_span(amb, basis, label, action_on_operators);
}

std::string to_string(CornerKind k) {
    switch (k) {
        case CornerKind::iso: return "iso";
        case CornerKind::canonical_matrix: return "canonical_matrix";
        case CornerKind::module: return "module";
        case CornerKind::composite: return "composite";
    }
    return "iso";
}

std::string corner_class_name(Speciality s) {
    return s == Speciality::neither ? std::string("generalized") : to_string(s);
}

ModuleReport check_corner(const SemigroupG& g, const Corner& c) {
    ModuleReport r;
    HomReport h = check_hom(g, c.hom);
    if (!h.ok()) {
        r.ok = false;
        r.witness = "corner " + c.label + ": " + h.witness;
    } else if (!h.injective) {
        r.ok = false;
        r.witness = "corner " + c.label + " is not injective";
    }
    return r;
}

Corner canonical_matrix_corner(const SemigroupG& g, const AlgPtr& b, std::size_t n, const std::vector<Mat>& sigma,
                               std::string label, std::size_t position) {
    auto alpha = b->action();
    CornerAction ca = CornerAction::product(n, b, sigma, alpha);
    if (ca.blocks.size() == 1 && g.size() > 1) ca = CornerAction::trivial(n, b, g.size());
    Corner c = matrix_corner(g, ca, std::move(label), position);
    c.kind = CornerKind::canonical_matrix;
    c.sigma = sigma;
    return c;
}

Corner matrix_corner(const SemigroupG& g, const CornerAction& action, std::string label, std::size_t position) {
    Corner c;
    const AlgPtr& b = action.carrier;
    if (label.empty()) label = "e_" + b->label() + "^" + std::to_string(action.n);
    c.label = label;
    AlgPtr k = action.algebra("M" + std::to_string(action.n) + "(" + b->label() + ")");
    c.hom = AlgebraHom(b, k, corner_matrix(action.n, b->dim(), position), label);
    c.kind = CornerKind::canonical_matrix;
    c.n = action.n;
    c.position = position;
    CornerAction full = action;
    if (full.blocks.size() != g.size()) full = CornerAction::trivial(action.n, b, g.size());
    try {
        c.speciality = classify_speciality(g, full);
        c.cls = c.speciality->cls;
        if (c.cls == Speciality::very_special) c.sigma = c.speciality->gamma;
    } catch (const Undetermined&) {
        c.cls = Speciality::neither;
    }
    return c;
}

Corner iso_corner(const SemigroupG&, const AlgebraHom& iso) {
    Corner c;
    c.label = iso.label.empty() ? "iso" : iso.label;
    c.hom = iso;
    c.kind = CornerKind::iso;
    c.cls = Speciality::very_special;
    c.n = 1;
    return c;
}

Corner corner_embedding(const SemigroupG& g, const FunctionalModule& m, std::string label) {
    const AlgPtr& a = m.algebra;
    const std::size_t da = a->dim();
    FunctionalModule f = FunctionalModule::direct_sum(m, FunctionalModule::regular(a));
    OperatorAlgebra k = compute_compacts(g, f);
    Mat hom(k.algebra()->dim(), da);
    for (std::size_t i = 0; i < da; ++i) {
        Mat op(f.dim, f.dim);
        Mat l = a->left_mult(a->basis(i));
        for (std::size_t r = 0; r < da; ++r)
            for (std::size_t c = 0; c < da; ++c) op(m.dim + r, m.dim + c) = l(r, c);
        auto coords = k.coords_of(op);
        if (!coords) throw std::runtime_error("corner operator outside the compacts of " + f.label);
        hom.set_col(i, *coords);
    }
    Corner c;
    c.label = label.empty() ? "e_" + m.label : std::move(label);
    c.hom = AlgebraHom(a, k.algebra(), hom, c.label);
    c.kind = CornerKind::module;
    if (rank(hom) != da) {
        auto ker = kernel(hom);
        throw std::runtime_error("corner embedding " + c.label + " is not injective; kernel vector " + to_string(ker.front()));
    }
    // Recognize E = A^(n-1): then K is M_n(A) and the corner sits at e_{n-1,n-1}.
    if (da > 0 && f.dim % da == 0) {
        const std::size_t n = f.dim / da;
        bool free_like = true;
        for (std::size_t kk = 0; kk < da && free_like; ++kk) {
            Mat expect(f.dim, f.dim);
            Mat rk = a->right_mult(a->basis(kk));
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t r = 0; r < da; ++r)
                    for (std::size_t q = 0; q < da; ++q) expect(s * da + r, s * da + q) = rk(r, q);
            free_like = expect == f.right[kk];
        }
        if (free_like && k.algebra()->dim() == n * n * da) {
            Mat p(k.algebra()->dim(), n * n * da);
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
                for (std::size_t j = 0; j < n && ok; ++j)
                    for (std::size_t x = 0; x < da && ok; ++x) {
                        Mat op(f.dim, f.dim);
                        Mat l = a->left_mult(a->basis(x));
                        for (std::size_t r = 0; r < da; ++r)
                            for (std::size_t q = 0; q < da; ++q) op(i * da + r, j * da + q) = l(r, q);
                        auto co = k.coords_of(op);
                        if (!co) ok = false;
                        else p.set_col((i * n + j) * da + x, *co);
                    }
            if (ok && rank(p) == p.cols()) {
                Mat pinv(p.cols(), p.rows());
                for (std::size_t col = 0; col < p.rows(); ++col) {
                    auto sol = solve_linear(p, unit_vec(p.rows(), col));
                    pinv.set_col(col, sol.particular);
                }
                std::vector<Mat> full;
                const auto& kact = k.algebra()->action();
                for (std::size_t x = 0; x < g.size(); ++x)
                    full.push_back(kact.empty() ? Mat::identity(p.cols()) : pinv * kact[x] * p);
                try {
                    CornerAction ca = CornerAction::from_full(n, a, full);
                    c.speciality = classify_speciality(g, ca);
                    c.cls = c.speciality->cls;
                    c.n = n;
                    c.position = n - 1;
                    if (c.cls == Speciality::very_special) c.sigma = c.speciality->gamma;
                } catch (const Undetermined&) {
                    c.cls = Speciality::neither;
                }
            }
        }
    }
    return c;
}

Corner compose_corners(const Corner& first, const Corner& second) {
    Corner c;
    c.label = first.label + ";" + second.label;
    c.hom = first.hom.then(second.hom, c.label);
    c.kind = CornerKind::composite;
    auto rank_of = [](Speciality s) { return s == Speciality::very_special ? 2 : s == Speciality::special ? 1 : 0; };
    c.cls = rank_of(first.cls) <= rank_of(second.cls) ? first.cls : second.cls;
    c.n = first.n * second.n;
    auto push = [&](const Corner& x) {
        if (x.kind == CornerKind::composite)
            c.factors.insert(c.factors.end(), x.factors.begin(), x.factors.end());
        else
            c.factors.push_back(x);
    };
    push(first);
    push(second);
    return c;
}

}  // namespace gk
