#include "gk/sequences.hpp"

#include <stdexcept>

namespace gk {

namespace {

Subspace image(const Mat& m) {
    Subspace s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) s.add(m.col(c));
    return s;
}

bool same_object(const AlgPtr& a, const AlgPtr& b) { return a->label() == b->label() && a->dim() == b->dim(); }

CheckReport fail(std::string condition, std::string witness) {
    CheckReport r;
    r.ok = false;
    r.condition = std::move(condition);
    r.witness = std::move(witness);
    return r;
}

std::string hom_issue(const SemigroupG& g, const AlgebraHom& h, bool need_injective) {
    HomReport r = check_hom(g, h);
    if (!r.ok()) return r.witness;
    if (need_injective && !r.injective) return h.label + " is not injective";
    return {};
}

}  // namespace

AlgebraHom split_projection(const AlgebraHom& iota, const AlgebraHom& s, std::string label) {
    const AlgPtr& x = iota.target;
    const std::size_t dj = iota.source->dim(), da = s.source->dim();
    if (dj + da != x->dim())
        throw std::invalid_argument("X is not the direct sum iota(J) + s(A): dimensions " + std::to_string(dj) + " + " +
                                    std::to_string(da) + " != " + std::to_string(x->dim()));
    Mat both(x->dim(), dj + da);
    for (std::size_t c = 0; c < dj; ++c) both.set_col(c, iota.matrix.col(c));
    for (std::size_t c = 0; c < da; ++c) both.set_col(dj + c, s.matrix.col(c));
    auto inv = inverse(both);
    if (!inv) throw std::invalid_argument("iota(J) and s(A) intersect nontrivially inside " + x->label());
    Mat f(da, x->dim());
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t c = 0; c < x->dim(); ++c) f(r, c) = (*inv)(dj + r, c);
    if (label.empty()) label = "f_" + s.label;
    return AlgebraHom(x, s.source, std::move(f), std::move(label));
}

SplitExactSeq make_split(std::string label, const AlgebraHom& iota, const AlgebraHom& s) {
    SplitExactSeq seq;
    seq.label = std::move(label);
    seq.iota = iota;
    seq.s = s;
    seq.f = split_projection(iota, s, "f_" + seq.label);
    return seq;
}

std::optional<std::string> ideal_witness(const AlgebraHom& iota) {
    const AlgPtr& x = iota.target;
    Subspace ij = image(iota.matrix);
    for (std::size_t j = 0; j < iota.source->dim(); ++j) {
        Vec v = iota.matrix.col(j);
        for (std::size_t k = 0; k < x->dim(); ++k) {
            if (!ij.contains(x->mul(x->basis(k), v)))
                return "x_" + std::to_string(k) + " * iota(j_" + std::to_string(j) + ") lies outside iota(J)";
            if (!ij.contains(x->mul(v, x->basis(k))))
                return "iota(j_" + std::to_string(j) + ") * x_" + std::to_string(k) + " lies outside iota(J)";
        }
    }
    return std::nullopt;
}

CheckReport validate_split(const SemigroupG& g, const SplitExactSeq& seq) {
    for (const AlgPtr& a : {seq.J(), seq.X(), seq.A()}) {
        AlgebraReport ar = check_algebra(*a);
        if (!ar.associative || !ar.unit_valid) return fail("algebra", a->label() + ": " + ar.witness);
    }
    if (!same_object(seq.f.source, seq.X()) || !same_object(seq.f.target, seq.A()) ||
        !same_object(seq.s.target, seq.X()))
        return fail("typing", "maps of " + seq.label + " do not compose");
    if (auto w = hom_issue(g, seq.iota, true); !w.empty()) return fail("iota", w);
    if (auto w = ideal_witness(seq.iota)) return fail("ideal", *w);
    if (auto w = hom_issue(g, seq.s, false); !w.empty()) return fail("s", w);
    if (auto w = hom_issue(g, seq.f, false); !w.empty()) return fail("f", w);
    if (!(seq.f.matrix * seq.s.matrix).is_identity()) return fail("f.s", "f o s != id on " + seq.A()->label());
    if (!(seq.f.matrix * seq.iota.matrix).is_zero()) return fail("exact", "f o iota != 0");
    if (rank(seq.f.matrix) != seq.A()->dim()) return fail("exact", "f is not surjective");
    if (seq.X()->dim() - rank(seq.f.matrix) != seq.J()->dim()) return fail("exact", "ker f != iota(J)");
    return {};
}

SplitExactSeq tensor_split(const SplitExactSeq& seq, std::size_t n, const std::vector<Mat>& sigma) {
    auto j = matrix_algebra(n, seq.J(), sigma);
    auto x = matrix_algebra(n, seq.X(), sigma);
    auto a = matrix_algebra(n, seq.A(), sigma);
    SplitExactSeq out;
    out.label = seq.label + "(x)M" + std::to_string(n);
    out.iota = matrix_amplify(seq.iota, n, j, x);
    out.f = matrix_amplify(seq.f, n, x, a);
    out.s = matrix_amplify(seq.s, n, a, x);
    return out;
}

SplitExactSeq unitization_split(const SemigroupG& g, const AlgPtr& a) {
    AdjoinedUnit au = adjoin_unit(g, a);
    SplitExactSeq seq;
    seq.label = "unit_" + a->label();
    seq.iota = au.inclusion;
    seq.f = au.projection;
    seq.s = au.unit_split;
    return seq;
}

MiddleSpace middle_space(const SemigroupG& g, const AlgebraHom& iota, const AlgebraHom& s, const std::string& label) {
    const AlgPtr& m = iota.target;
    const AlgPtr& a = s.source;
    if (!same_object(s.target, m)) throw std::invalid_argument("middle space: s does not map into " + m->label());
    if (auto w = ideal_witness(iota)) throw std::invalid_argument("middle space: J is not an ideal: " + *w);
    MiddleSpace ms;
    ms.ambient = direct_sum(m, a);
    const std::size_t dm = m->dim(), dj = iota.source->dim(), da = a->dim();
    std::vector<Vec> gens;
    for (std::size_t k = 0; k < dj; ++k) gens.push_back(concat(iota.matrix.col(k), Vec(da)));
    for (std::size_t k = 0; k < da; ++k) gens.push_back(concat(s.matrix.col(k), unit_vec(da, k)));
    std::vector<Mat> act;
    if (!ms.ambient->has_trivial_action())
        for (std::size_t x = 0; x < g.size(); ++x) act.push_back(ms.ambient->act(x));
    ms.carrier = subalgebra_from_span(Ambient::of(ms.ambient), gens, label, act);
    const AlgPtr& c = ms.carrier.algebra;
    if (c->dim() != dj + da) throw std::invalid_argument("middle space " + label + " is not linearly J + A");
    ms.to_ambient = AlgebraHom(c, ms.ambient, ms.carrier.embedding, "in_" + label);
    Mat pm(dm, c->dim()), pa(da, c->dim()), ij(c->dim(), dj), gr(c->dim(), da);
    for (std::size_t col = 0; col < c->dim(); ++col) {
        Vec v = ms.carrier.embedding.col(col);
        for (std::size_t r = 0; r < dm; ++r) pm(r, col) = v[r];
        for (std::size_t r = 0; r < da; ++r) pa(r, col) = v[dm + r];
    }
    for (std::size_t k = 0; k < dj; ++k) ij(k, k) = 1;
    for (std::size_t k = 0; k < da; ++k) gr(dj + k, k) = 1;
    ms.proj_m = AlgebraHom(c, m, std::move(pm), "pr_" + m->label());
    ms.proj_a = AlgebraHom(c, a, std::move(pa), "pr_" + a->label());
    ms.ideal = AlgebraHom(iota.source, c, std::move(ij), "j_" + label);
    ms.graph = AlgebraHom(a, c, std::move(gr), "gr_" + label);
    return ms;
}

AlgPtr oplus_algebra(const AlgebraHom& iota, const AlgebraHom& s, const std::string& label) {
    const AlgPtr& m = iota.target;
    const AlgPtr& j = iota.source;
    const AlgPtr& a = s.source;
    const std::size_t dj = j->dim(), da = a->dim(), n = dj + da;
    Subspace ij = image(iota.matrix);
    auto lift = [&](std::size_t k) { return k < dj ? std::pair{iota.matrix.col(k), Vec(da)} : std::pair{s.matrix.col(k - dj), unit_vec(da, k - dj)}; };
    auto product = [&](std::size_t p, std::size_t q) {
        auto [mp, ap] = lift(p);
        auto [mq, aq] = lift(q);
        // j1 j2 + j1 s(a2) + s(a1) j2 = (m1 m2) - s(a1 a2), which lies in iota(J)
        Vec aa = a->mul(ap, aq);
        Vec jm = sub(m->mul(mp, mq), s.matrix.apply(aa));
        auto jc = ij.coords(jm);
        if (!jc) throw std::invalid_argument("J (+)_s A: product leaves iota(J); J is not an ideal");
        return concat(*jc, aa);
    };
    std::vector<Mat> action;
    if (!j->has_trivial_action() || !a->has_trivial_action()) {
        std::size_t gs = j->has_trivial_action() ? a->action().size() : j->action().size();
        for (std::size_t x = 0; x < gs; ++x) action.push_back(Mat::block_diag(j->act(x), a->act(x)));
    }
    std::optional<Vec> unit;
    if (m->unit() && a->unit() && s.matrix.apply(*a->unit()) == *m->unit()) unit = concat(Vec(dj), *a->unit());
    return Algebra::make(label, n, product, unit, action);
}

std::pair<AlgebraHom, AlgebraHom> zeta(const SemigroupG& g, const AlgPtr& oplus, const MiddleSpace& ms,
                                       const AlgebraHom& iota) {
    const AlgPtr& c = ms.algebra();
    if (oplus->dim() != c->dim()) throw std::invalid_argument("zeta: dimension mismatch");
    // Carrier coordinates (j, a) stand for (iota(j) + s(a), a), so zeta is the
    // identity in these coordinates; the checks below make that explicit.
    Mat z = Mat::identity(c->dim());
    const std::size_t dj = iota.source->dim();
    for (std::size_t k = 0; k < c->dim(); ++k) {
        Vec expect = ms.to_ambient(unit_vec(c->dim(), k));
        Vec lhs = k < dj ? concat(iota.matrix.col(k), Vec(c->dim() - dj)) : expect;
        if (lhs != expect) throw std::logic_error("zeta: carrier basis does not match J (+) A");
    }
    AlgebraHom fwd(oplus, c, z, "zeta");
    AlgebraHom bwd(c, oplus, z, "zeta^-1");
    for (const auto* h : {&fwd, &bwd}) {
        HomReport r = check_hom(g, *h);
        if (!r.ok() || !r.injective) throw std::logic_error("zeta is not an equivariant isomorphism: " + r.witness);
    }
    return {fwd, bwd};
}

M2Space trivial_m2(const SemigroupG& g, const AlgPtr& x) {
    M2Space m;
    if (x->has_trivial_action())
        m.delta = CornerAction::trivial(2, x, g.size());
    else
        m.delta = CornerAction::product(2, x, {}, x->action());
    return m;
}

namespace {

Mat ad_block(const Mat& left, const Mat& right_star) { return kron(left, right_star.transpose()); }

const Mat& side(const Realization& r, std::size_t a, std::size_t g) { return a == 0 ? r.s[g] : r.t[g]; }

}  // namespace

M2Space m2_from_realization(const SemigroupG& g, const AlgPtr& x, Realization r) {
    if (r.s.size() != g.size() || r.t.size() != g.size())
        throw std::invalid_argument("realization needs one S and one T map per semigroup element");
    if (r.rho.rows() != r.edim * r.edim || r.rho.cols() != x->dim())
        throw std::invalid_argument("realization map rho has wrong shape");
    Subspace img = image(r.rho);
    if (img.dim() != x->dim()) throw std::invalid_argument("realization map rho is not injective");
    M2Space m;
    m.delta.n = 2;
    m.delta.carrier = x;
    for (std::size_t k = 0; k < g.size(); ++k) {
        std::vector<Mat> bl;
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                Mat amb = ad_block(side(r, a, k), side(r, b, g.star(k)));
                Mat blk(x->dim(), x->dim());
                for (std::size_t c = 0; c < x->dim(); ++c) {
                    auto co = img.coords(amb.apply(r.rho.col(c)));
                    if (!co)
                        throw std::invalid_argument("M2(" + x->label() + ") is not invariant under ad(S+T) at g=" +
                                                    g.name(k));
                    blk.set_col(c, *co);
                }
                bl.push_back(std::move(blk));
            }
        m.delta.blocks.push_back(std::move(bl));
    }
    m.realization = std::move(r);
    return m;
}

std::optional<Realization> canonical_realization(const SemigroupG& g, const M2Space& m) {
    const AlgPtr& x = m.x();
    Realization r;
    r.edim = x->dim();
    r.rho = Mat(r.edim * r.edim, r.edim);
    for (std::size_t k = 0; k < r.edim; ++k) r.rho.set_col(k, x->left_mult(x->basis(k)).flatten());
    if (rank(r.rho) != r.edim) return std::nullopt;
    for (std::size_t k = 0; k < g.size(); ++k) {
        r.s.push_back(m.delta.block(k, 0, 0));
        r.t.push_back(m.delta.block(k, 1, 0));
    }
    try {
        M2Space rebuilt = m2_from_realization(g, x, r);
        if (rebuilt.delta.blocks != m.delta.blocks) return std::nullopt;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    return r;
}

AmbientCornerAction realization_ambient(const SemigroupG& g, const Realization& r) {
    AmbientCornerAction amb;
    amb.x = Ambient::endomorphisms(r.edim);
    amb.n = 2;
    for (std::size_t k = 0; k < g.size(); ++k) {
        std::vector<Mat> bl;
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) bl.push_back(ad_block(side(r, a, k), side(r, b, g.star(k))));
        amb.blocks.push_back(std::move(bl));
    }
    return amb;
}

CheckReport check_m2(const SemigroupG& g, const M2Space& m) {
    if (m.delta.n != 2) return fail("(e)", "M2-space must have matrix size 2");
    if (m.delta.blocks.size() != g.size()) return fail("(e)", "M2-action has wrong number of elements");
    auto alg = m.delta.algebra();
    ActionReport ar = check_action(g, *alg, m.delta.full_maps());
    if (!ar.ok) return fail("(e)", "delta is not an action on M2(" + m.x()->label() + "): " + ar.witness);
    if (m.realization) {
        const Realization& r = *m.realization;
        const AlgPtr& x = m.x();
        for (std::size_t i = 0; i < x->dim(); ++i)
            for (std::size_t j = 0; j < x->dim(); ++j) {
                Mat lhs = Mat::unflatten(r.edim, r.edim, r.rho.apply(x->mul(x->basis(i), x->basis(j))));
                Mat rhs = Mat::unflatten(r.edim, r.edim, r.rho.col(i)) * Mat::unflatten(r.edim, r.edim, r.rho.col(j));
                if (lhs != rhs) return fail("(e)", "realization rho is not multiplicative");
            }
        try {
            M2Space rebuilt = m2_from_realization(g, x, r);
            if (rebuilt.delta.blocks != m.delta.blocks)
                return fail("(e)", "delta differs from ad(S+T) of the stored realization");
        } catch (const std::invalid_argument& e) {
            return fail("(e)", e.what());
        }
    }
    return {};
}

AlgebraHom derive_f(const L1Element& z) { return split_projection(z.iota, z.s_minus, "f_" + z.label); }

SplitExactSeq minus_split(const L1Element& z) {
    SplitExactSeq seq;
    seq.label = z.label + "-";
    seq.iota = z.iota;
    seq.s = z.s_minus;
    seq.f = derive_f(z);
    return seq;
}

M2Corners m2_corners(const SemigroupG& g, const L1Element& z) {
    M2Corners c;
    std::vector<Mat> gm, gp;
    for (std::size_t k = 0; k < z.m2.delta.blocks.size(); ++k) {
        gm.push_back(z.m2.gamma_minus(k));
        gp.push_back(z.m2.gamma_plus(k));
    }
    c.m2 = z.m2.delta.algebra("M2(" + z.x->label() + ")[" + z.label + "]");
    c.x_plus = z.x->with_action(gp, z.x->label() + "[+]");
    AlgPtr x_minus = z.x->with_action(gm);
    c.f1.label = "f1_" + z.label;
    c.f1.hom = AlgebraHom(x_minus, c.m2, corner_matrix(2, z.x->dim(), 0), c.f1.label);
    c.f1.kind = CornerKind::canonical_matrix;
    c.f1.n = 2;
    c.f1.position = 0;
    try {
        c.f1.speciality = classify_m2(g, z);
        c.f1.cls = c.f1.speciality->cls;
        if (c.f1.cls == Speciality::very_special) c.f1.sigma = c.f1.speciality->gamma;
    } catch (const Undetermined&) {
        c.f1.cls = Speciality::neither;
    }
    c.f2 = AlgebraHom(c.x_plus, c.m2, corner_matrix(2, z.x->dim(), 1), "f2_" + z.label);
    return c;
}

L1Report validate_l1(const SemigroupG& g, const L1Element& z) {
    L1Report rep;
    auto bad = [&](std::string cond, std::string w) {
        static_cast<CheckReport&>(rep) = fail(std::move(cond), std::move(w));
        return rep;
    };
    for (const AlgPtr& a : {z.b, z.j, z.x, z.a}) {
        AlgebraReport ar = check_algebra(*a);
        if (!ar.ok()) return bad("objects", a->label() + ": " + ar.witness);
    }
    // (a) the exit is a corner embedding, optionally preceded by psi: J -> K
    const Corner& e = z.exit.corner;
    if (!same_object(e.source(), z.b)) return bad("(a)", "corner " + e.label + " does not start at " + z.b->label());
    if (auto r = check_corner(g, e); !r.ok) return bad("(a)", r.witness);
    if (z.exit.psi) {
        const AlgebraHom& psi = *z.exit.psi;
        if (!same_object(psi.source, z.j) || !same_object(psi.target, e.target()))
            return bad("(a)", "psi must map " + z.j->label() + " to " + e.target()->label());
        if (auto w = hom_issue(g, psi, false); !w.empty()) return bad("(a)", w);
    } else if (!same_object(e.target(), z.j)) {
        return bad("(a)", "corner " + e.label + " lands in " + e.target()->label() + ", not in " + z.j->label());
    }
    // (b)
    if (!same_object(z.iota.source, z.j) || !same_object(z.iota.target, z.x))
        return bad("(b)", "iota must map " + z.j->label() + " to " + z.x->label());
    if (auto w = hom_issue(g, z.iota, true); !w.empty()) return bad("(b)", w);
    if (auto w = ideal_witness(z.iota)) return bad("(b)", *w);
    // (c)
    for (const auto* s : {&z.s_minus, &z.s_plus})
        if (!same_object(s->source, z.a) || s->target->dim() != z.x->dim())
            return bad("(c)", s->label + " must map " + z.a->label() + " to " + z.x->label());
    try {
        rep.f = derive_f(z);
    } catch (const std::invalid_argument& ex) {
        return bad("(c)", ex.what());
    }
    // (d)
    Subspace ij = image(z.iota.matrix);
    for (const auto* s : {&z.s_minus, &z.s_plus}) {
        HomReport hr = check_hom(SemigroupG::trivial(), AlgebraHom(z.a, z.x, s->matrix, s->label));
        if (!hr.multiplicative) return bad("(d)", hr.witness);
        if (!hr.injective) return bad("(d)", s->label + " is not injective");
    }
    for (std::size_t k = 0; k < z.a->dim(); ++k) {
        Vec d = sub(z.s_plus.matrix.col(k), z.s_minus.matrix.col(k));
        if (!ij.contains(d))
            return bad("(d)", "s+(a_" + std::to_string(k) + ") - s-(a_" + std::to_string(k) + ") = " + to_string(d) +
                                  " is not in iota(J)");
    }
    if (auto w = hom_issue(g, *rep.f, false); !w.empty()) return bad("(c)", "derived f: " + w);
    // (e)
    if (!same_object(z.m2.x(), z.x)) return bad("(e)", "M2-space carrier is not " + z.x->label());
    if (auto r = check_m2(g, z.m2); !r.ok) return bad(r.condition, r.witness);
    for (std::size_t k = 0; k < g.size(); ++k)
        if (z.x->act(k) != z.m2.gamma_minus(k))
            return bad("(e)", "the action of " + z.x->label() + " differs from delta^11 at g=" + g.name(k));
    // (f)
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (z.m2.gamma_minus(k) * z.s_minus.matrix != z.s_minus.matrix * z.a->act(k))
            return bad("(f)", "s- is not gamma- equivariant at g=" + g.name(k));
        if (z.m2.gamma_plus(k) * z.s_plus.matrix != z.s_plus.matrix * z.a->act(k))
            return bad("(f)", "s+ is not gamma+ equivariant at g=" + g.name(k));
    }
    // (g)
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t c = 0; c < 4; ++c) {
            const Mat& blk = z.m2.delta.blocks[k][c];
            for (std::size_t j = 0; j < z.j->dim(); ++j)
                if (!ij.contains(blk.apply(z.iota.matrix.col(j))))
                    return bad("(g)", "M2(J) is not invariant at g=" + g.name(k) + ", corner " + std::to_string(c));
            Mat diff = blk - z.m2.delta.blocks[k][0];
            for (std::size_t x = 0; x < z.x->dim(); ++x)
                if (!ij.contains(diff.col(x)))
                    return bad("(g)", "quotient action is not id (x) alpha at g=" + g.name(k) + ", corner " +
                                          std::to_string(c));
        }
    return rep;
}

SpecialityResult classify_m2(const SemigroupG& g, const L1Element& z) {
    try {
        return classify_speciality(g, z.m2.delta);
    } catch (const Undetermined&) {
        std::optional<Realization> r = z.m2.realization;
        if (!r) r = canonical_realization(g, z.m2);
        if (!r) throw;
        Subspace j(r->edim * r->edim), x(r->edim * r->edim);
        for (std::size_t k = 0; k < z.j->dim(); ++k) j.add(r->rho.apply(z.iota.matrix.col(k)));
        for (std::size_t k = 0; k < z.x->dim(); ++k) x.add(r->rho.col(k));
        return classify_speciality_ambient(g, realization_ambient(g, *r), j, x, z.x->label());
    }
}

bool is_zero_element(const L1Element& z) { return z.s_plus.matrix == z.s_minus.matrix; }

}  // namespace gk
