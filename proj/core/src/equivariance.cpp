#include "gk/equivariance.hpp"

#include <algorithm>

namespace gk {

namespace {

std::string pair_str(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

bool maps_trivial(const std::vector<Mat>& maps) {
    return std::all_of(maps.begin(), maps.end(), [](const Mat& m) { return m.is_identity(); });
}

}  // namespace

CAlgebra build_c_algebra(const SemigroupG& g) {
    CAlgebra c;
    c.idempotents = g.idempotents();
    const std::size_t m = c.idempotents.size();
    auto index = [&](std::size_t e) {
        auto it = std::find(c.idempotents.begin(), c.idempotents.end(), e);
        if (it == c.idempotents.end()) throw std::logic_error("product of idempotents is not idempotent");
        return static_cast<std::size_t>(it - c.idempotents.begin());
    };
    c.unit_index = index(g.unit());
    if (g.is_group()) {
        c.algebra = base_field(g);
    } else {
        c.algebra = Algebra::make("c", m, [&](std::size_t i, std::size_t j) {
            return unit_vec(m, index(g.mul(c.idempotents[i], c.idempotents[j])));
        }, unit_vec(m, c.unit_index));
    }
    bool trivial = true;
    for (std::size_t x = 0; x < g.size(); ++x) {
        Mat chi(m, m);
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t conj = g.mul(g.mul(x, c.idempotents[k]), g.star(x));
            chi(index(conj), k) = 1;
        }
        if (!chi.is_identity()) trivial = false;
        c.chi.push_back(std::move(chi));
    }
    if (!trivial) c.algebra = c.algebra->with_action(c.chi);
    return c;
}

ActionReport check_action(const SemigroupG& g, const Algebra& a, const std::vector<Mat>& maps) {
    ActionReport r;
    if (maps.empty()) return r;
    auto fail = [&](std::string w) {
        r.ok = false;
        r.witness = std::move(w);
        return r;
    };
    if (maps.size() != g.size()) return fail("action has " + std::to_string(maps.size()) + " maps for " +
                                             std::to_string(g.size()) + " semigroup elements");
    const std::size_t d = a.dim();
    for (const auto& m : maps)
        if (m.rows() != d || m.cols() != d) return fail("action map has wrong size");
    if (!maps[g.unit()].is_identity()) return fail("unit does not act as the identity");
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y)
            if (maps[x] * maps[y] != maps[g.mul(x, y)])
                return fail("semigroup law fails at (" + g.name(x) + "," + g.name(y) + ")");
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Vec lhs = maps[x].apply(a.mul(a.basis(i), a.basis(j)));
                Vec rhs = a.mul(maps[x].col(i), maps[x].col(j));
                if (lhs != rhs) return fail("not multiplicative at g=" + g.name(x) + ", basis pair " + pair_str(i, j));
            }
    for (auto e : g.idempotents())
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (a.mul(maps[e].col(i), a.basis(j)) != a.mul(a.basis(i), maps[e].col(j)))
                    return fail("alpha_e(a) b != a alpha_e(b) at e=" + g.name(e) + ", basis pair " + pair_str(i, j));
    return r;
}

ActionReport check_module_action(const SemigroupG& g, const Algebra& a, const std::vector<Mat>& right,
                                 const std::vector<Mat>& s) {
    ActionReport r;
    auto fail = [&](std::string w) {
        r.ok = false;
        r.witness = std::move(w);
        return r;
    };
    if (right.size() != a.dim()) return fail("module needs one right multiplication matrix per basis element");
    if (s.empty()) {
        if (a.has_trivial_action()) return r;
        return fail("trivial module action over an algebra with nontrivial action");
    }
    if (s.size() != g.size()) return fail("module action has wrong number of maps");
    if (!s[g.unit()].is_identity()) return fail("unit does not act as the identity on the module");
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y)
            if (s[x] * s[y] != s[g.mul(x, y)])
                return fail("module semigroup law fails at (" + g.name(x) + "," + g.name(y) + ")");
    for (std::size_t x = 0; x < g.size(); ++x) {
        Mat alpha = a.act(x);
        for (std::size_t k = 0; k < a.dim(); ++k) {
            // S_g R_{a_k} = R_{alpha_g(a_k)} S_g
            Mat rk(right[k].rows(), right[k].cols());
            Vec ak = alpha.col(k);
            for (std::size_t l = 0; l < a.dim(); ++l)
                if (!ak[l].is_zero()) rk += ak[l] * right[l];
            if (s[x] * right[k] != rk * s[x])
                return fail("S_g(xi a) != S_g(xi) alpha_g(a) at g=" + g.name(x) + ", basis " + std::to_string(k));
        }
    }
    for (auto e : g.idempotents()) {
        Mat alpha = a.act(e);
        for (std::size_t k = 0; k < a.dim(); ++k) {
            Mat rk(right[k].rows(), right[k].cols());
            Vec ak = alpha.col(k);
            for (std::size_t l = 0; l < a.dim(); ++l)
                if (!ak[l].is_zero()) rk += ak[l] * right[l];
            if (right[k] * s[e] != rk)
                return fail("S_e(xi) a != xi alpha_e(a) at e=" + g.name(e) + ", basis " + std::to_string(k));
        }
    }
    return r;
}

std::vector<Mat> adjoint_action(const SemigroupG& g, const std::vector<Mat>& s, const std::vector<Mat>& t) {
    std::vector<Mat> out;
    if (s.empty() && t.empty()) return out;
    for (std::size_t x = 0; x < g.size(); ++x) {
        const Mat& tx = t.empty() ? Mat::identity(s.front().rows()) : t[x];
        Mat sinv = s.empty() ? Mat::identity(t.front().rows()) : s[g.star(x)];
        out.push_back(kron(tx, sinv.transpose()));
    }
    return out;
}

AdjoinedUnit adjoin_unit(const SemigroupG& g, const AlgPtr& a) {
    AdjoinedUnit out;
    out.c = build_c_algebra(g);
    const std::size_t d = a->dim(), m = out.c.idempotents.size(), n = d + m;
    std::vector<Mat> alpha_e;
    for (auto e : out.c.idempotents) alpha_e.push_back(a->act(e));
    auto f = [&](std::size_t i, std::size_t j) {
        Vec v(n);
        if (i < d && j < d) {
            for (const auto& [k, c] : a->product(i, j)) v[k] += c;
        } else if (i < d) {
            Vec w = alpha_e[j - d].col(i);
            for (std::size_t k = 0; k < d; ++k) v[k] = w[k];
        } else if (j < d) {
            Vec w = alpha_e[i - d].col(j);
            for (std::size_t k = 0; k < d; ++k) v[k] = w[k];
        } else {
            for (const auto& [k, c] : out.c.algebra->product(i - d, j - d)) v[d + k] += c;
        }
        return v;
    };
    std::vector<Mat> action;
    if (!a->has_trivial_action() || !maps_trivial(out.c.chi))
        for (std::size_t x = 0; x < g.size(); ++x) action.push_back(Mat::block_diag(a->act(x), out.c.chi[x]));
    out.plus = Algebra::make(a->label() + "+", n, f, unit_vec(n, d + out.c.unit_index), action);
    Mat inc(n, d), proj(m, n), split(n, m);
    for (std::size_t k = 0; k < d; ++k) inc(k, k) = 1;
    for (std::size_t k = 0; k < m; ++k) {
        proj(k, d + k) = 1;
        split(d + k, k) = 1;
    }
    out.inclusion = AlgebraHom(a, out.plus, inc, "incl_" + a->label());
    out.projection = AlgebraHom(out.plus, out.c.algebra, proj, "q_" + a->label());
    out.unit_split = AlgebraHom(out.c.algebra, out.plus, split, "u_" + a->label());
    return out;
}

Mat CornerAction::full(std::size_t g) const {
    const std::size_t d = carrier->dim(), N = n * n * d;
    Mat m(N, N);
    for (std::size_t c = 0; c < n * n; ++c) {
        const Mat& b = blocks[g][c];
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k) m(c * d + r, c * d + k) = b(r, k);
    }
    return m;
}

std::vector<Mat> CornerAction::full_maps() const {
    std::vector<Mat> out;
    bool trivial = true;
    for (std::size_t g = 0; g < blocks.size(); ++g) {
        out.push_back(full(g));
        if (!out.back().is_identity()) trivial = false;
    }
    if (trivial) out.clear();
    return out;
}

AlgPtr CornerAction::algebra(std::string label) const {
    return matrix_algebra(n, carrier->has_trivial_action() ? carrier : carrier->with_action({}), {}, std::move(label))
        ->with_action(full_maps());
}

CornerAction CornerAction::from_full(std::size_t n, const AlgPtr& carrier, const std::vector<Mat>& full) {
    CornerAction ca;
    ca.n = n;
    ca.carrier = carrier;
    const std::size_t d = carrier->dim(), N = n * n * d;
    for (std::size_t g = 0; g < full.size(); ++g) {
        const Mat& m = full[g];
        if (m.rows() != N || m.cols() != N) throw std::invalid_argument("action on M_n has wrong size");
        std::vector<Mat> bl;
        for (std::size_t c = 0; c < n * n; ++c) {
            Mat b(d, d);
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t k = 0; k < d; ++k) {
                    const Scalar& v = m(r, c * d + k);
                    if (r / d == c)
                        b(r % d, k) = v;
                    else if (!v.is_zero())
                        throw Undetermined("not corner-invariant: corner " + std::to_string(c) + " at g index " +
                                           std::to_string(g));
                }
            bl.push_back(std::move(b));
        }
        ca.blocks.push_back(std::move(bl));
    }
    return ca;
}

CornerAction CornerAction::product(std::size_t n, const AlgPtr& carrier, const std::vector<Mat>& gamma,
                                   const std::vector<Mat>& alpha) {
    std::size_t gs = std::max(gamma.size(), alpha.size());
    std::vector<Mat> full;
    for (std::size_t g = 0; g < gs; ++g)
        full.push_back(kron(gamma.empty() ? Mat::identity(n * n) : gamma[g],
                            alpha.empty() ? Mat::identity(carrier->dim()) : alpha[g]));
    if (gs == 0) full.push_back(Mat::identity(n * n * carrier->dim()));
    return from_full(n, carrier, full);
}

CornerAction CornerAction::trivial(std::size_t n, const AlgPtr& carrier, std::size_t group_size) {
    CornerAction ca;
    ca.n = n;
    ca.carrier = carrier;
    ca.blocks.assign(group_size, std::vector<Mat>(n * n, Mat::identity(carrier->dim())));
    return ca;
}

std::string to_string(Speciality s) {
    switch (s) {
        case Speciality::very_special: return "very_special";
        case Speciality::special: return "special";
        case Speciality::neither: return "neither";
    }
    return "neither";
}

namespace {

// delta^ij_g = c_ij(g) delta^11_g with gamma_g(e_ij) = c_ij(g) e_ij an action on M_n.
std::optional<SpecialityResult> product_form(const SemigroupG& g, const CornerAction& d) {
    const std::size_t n = d.n, dim = d.carrier->dim();
    SpecialityResult res;
    res.cls = Speciality::very_special;
    res.route = "product-form";
    for (std::size_t x = 0; x < d.blocks.size(); ++x) {
        const Mat& a = d.block(x, 0, 0);
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t r = 0; r < dim && !pivot; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                if (!a(r, c).is_zero()) {
                    pivot = {r, c};
                    break;
                }
        Mat gamma(n * n, n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Mat& b = d.block(x, i, j);
                Scalar c = pivot ? b(pivot->first, pivot->second) * a(pivot->first, pivot->second).inverse() : Scalar(0);
                if (b != c * a) return std::nullopt;
                gamma(i * n + j, i * n + j) = c;
            }
        res.gamma.push_back(std::move(gamma));
        res.alpha.push_back(a);
    }
    auto mn = matrix_algebra(n, base_field(g));
    if (!check_action(g, *mn, res.gamma).ok) return std::nullopt;
    if (!check_action(g, *d.carrier, res.alpha).ok) return std::nullopt;
    return res;
}

}  // namespace

SpecialityResult classify_speciality(const SemigroupG& g, const CornerAction& d) {
    if (d.blocks.size() != g.size()) throw std::invalid_argument("corner action has wrong number of elements");
    if (auto pf = product_form(g, d)) return *pf;
    const auto& A = d.carrier;
    if (!A->unit()) throw Undetermined("carrier " + A->label() + " is not unital and the action is not of product form");

    AdjoinedUnit au = adjoin_unit(g, A);
    const std::size_t dim = A->dim(), m = au.c.idempotents.size(), n = d.n;
    // Phi: A+ -> A x c, (a, c) -> (a + c.1, c)
    Mat phi = Mat::identity(dim + m), phi_inv = Mat::identity(dim + m);
    for (std::size_t k = 0; k < m; ++k) {
        Vec c1 = A->act(au.c.idempotents[k]).apply(*A->unit());
        for (std::size_t r = 0; r < dim; ++r) {
            phi(r, dim + k) = c1[r];
            phi_inv(r, dim + k) = -c1[r];
        }
    }
    CornerAction ext;
    ext.n = n;
    ext.carrier = au.plus->with_action({});
    for (std::size_t x = 0; x < g.size(); ++x) {
        std::vector<Mat> bl;
        for (std::size_t c = 0; c < n * n; ++c)
            bl.push_back(phi_inv * Mat::block_diag(d.blocks[x][c], au.c.chi[x]) * phi);
        ext.blocks.push_back(std::move(bl));
    }
    Extension e;
    e.unitized = au.plus;
    e.embedding = au.inclusion.matrix;
    e.matrix = ext.algebra("M" + std::to_string(n) + "(" + au.plus->label() + ")");
    e.report = check_action(g, *e.matrix, ext.full_maps());
    e.restricts = true;
    for (std::size_t x = 0; x < g.size() && e.restricts; ++x)
        for (std::size_t c = 0; c < n * n; ++c)
            if (ext.blocks[x][c] * e.embedding != e.embedding * d.blocks[x][c]) {
                e.restricts = false;
                break;
            }
    if (!e.report.ok || !e.restricts)
        throw Undetermined("extension over the unitization failed: " +
                           (e.report.ok ? std::string("does not restrict") : e.report.witness));
    SpecialityResult res;
    res.cls = Speciality::special;
    res.route = "unital-carrier";
    res.extension = std::move(e);
    return res;
}

SpecialityResult classify_speciality_ambient(const SemigroupG& g, const AmbientCornerAction& d, const Subspace& j,
                                             const Subspace& z, const std::string& label) {
    if (!d.x.unit) throw Undetermined("ambient algebra for " + label + " is not unital");
    if (d.blocks.size() != g.size()) throw std::invalid_argument("corner action has wrong number of elements");
    const std::size_t n = d.n, dx = d.x.dim;
    const Vec& one = *d.x.unit;
    SpecialityResult res;
    res.cls = Speciality::neither;
    res.route = "ideal-criterion";
    auto neither = [&](std::size_t x, Vec el, std::string w) {
        res.witness_g = x;
        res.witness_element = std::move(el);
        res.witness = std::move(w);
        return res;
    };
    for (std::size_t x = 0; x < g.size(); ++x) {
        const Mat& d11 = d.blocks[x][0];
        for (std::size_t k = 0; k < j.dim(); ++k) {
            Vec v = d11.apply(j.basis()[k]);
            if (!j.contains(v))
                return neither(x, v, "J is not invariant under delta^11 at g=" + g.name(x));
        }
        for (std::size_t k = 0; k < z.dim(); ++k) {
            Vec v = d11.apply(z.basis()[k]);
            if (!z.contains(v))
                return neither(x, v, "Z is not invariant under delta^11 at g=" + g.name(x));
        }
        Vec base = d11.apply(one);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == 0 && b == 0) continue;
                Vec diff = sub(d.blocks[x][a * n + b].apply(one), base);
                if (!j.contains(diff))
                    return neither(x, diff, "delta^" + std::to_string(a + 1) + std::to_string(b + 1) + "_" + g.name(x) +
                                                "(1) - delta^11_" + g.name(x) + "(1) is not in J");
            }
    }

    // X+ = X x c as a direct product; Z+ = Z x 0 + c (1_X, 1).
    CAlgebra c = build_c_algebra(g);
    const std::size_t m = c.idempotents.size();
    Ambient xp;
    xp.dim = dx + m;
    xp.mul = [&, dx, m](const Vec& u, const Vec& v) {
        Vec r = concat(d.x.mul(slice(u, 0, dx), slice(v, 0, dx)), c.algebra->mul(slice(u, dx, m), slice(v, dx, m)));
        return r;
    };
    xp.unit = concat(one, unit_vec(m, c.unit_index));
    std::vector<Vec> gens;
    for (const auto& b : z.basis()) gens.push_back(concat(b, Vec(m)));
    gens.push_back(*xp.unit);
    Subalgebra zp = subalgebra_from_span(xp, gens, label + "+");
    Subspace jp(xp.dim);
    for (const auto& b : j.basis()) jp.add(concat(b, Vec(m)));

    CornerAction ext;
    ext.n = n;
    ext.carrier = zp.algebra;
    for (std::size_t x = 0; x < g.size(); ++x) {
        std::vector<Mat> bl;
        for (std::size_t cidx = 0; cidx < n * n; ++cidx) {
            Mat amb = Mat::block_diag(d.blocks[x][cidx], c.chi[x]);
            for (std::size_t k = 0; k < jp.dim(); ++k)
                if (!jp.contains(amb.apply(jp.basis()[k])))
                    throw Undetermined("M_n(J) not invariant although the criterion holds");
            for (std::size_t k = 0; k < zp.span.dim(); ++k) {
                Vec diff = sub(amb.apply(zp.span.basis()[k]),
                               Mat::block_diag(d.blocks[x][0], c.chi[x]).apply(zp.span.basis()[k]));
                if (!jp.contains(diff)) throw Undetermined("quotient action is not of the form id (x) alpha");
            }
            bl.push_back(restrict_map(zp.span, amb, label + "+"));
        }
        ext.blocks.push_back(std::move(bl));
    }
    Extension e;
    e.unitized = zp.algebra;
    e.embedding = Mat(zp.algebra->dim(), z.dim());
    for (std::size_t k = 0; k < z.dim(); ++k) e.embedding.set_col(k, *zp.coords(concat(z.basis()[k], Vec(m))));
    e.matrix = ext.algebra("M" + std::to_string(n) + "(" + label + "+)");
    e.report = check_action(g, *e.matrix, ext.full_maps());
    e.restricts = true;
    if (!e.report.ok) throw Undetermined("extension to M_n(Z+) is not an action: " + e.report.witness);
    res.cls = Speciality::special;
    res.extension = std::move(e);
    return res;
}

}  // namespace gk
