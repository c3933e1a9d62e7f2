#include "gk/fusion.hpp"

#include <stdexcept>

namespace gk {

namespace {

bool same_object(const AlgPtr& a, const AlgPtr& b) { return a->label() == b->label() && a->dim() == b->dim(); }

Subspace column_span(const Mat& m) {
    Subspace s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) s.add(m.col(c));
    return s;
}

// [top; bottom] stacked vertically.
Mat stack(const Mat& top, const Mat& bottom) {
    Mat m(top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) m(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < bottom.cols(); ++c) m(top.rows() + r, c) = bottom(r, c);
    return m;
}

std::vector<Mat> actions_of(const SemigroupG& g, const AlgPtr& a) {
    std::vector<Mat> out;
    for (std::size_t k = 0; k < g.size(); ++k) out.push_back(a->act(k));
    return out;
}

void certify(const SemigroupG& g, FusionResult& r, DiagramCertificate c) {
    DiagramReport rep = check_diagram(g, c);
    if (!rep.ok) throw CertificateFailure("certificate " + rep.condition + " failed: " + rep.witness);
    r.certificates.push_back(std::move(c));
    r.reports.push_back(std::move(rep));
}

void require_hom(const SemigroupG& g, const AlgebraHom& h, const std::string& what) {
    HomReport r = check_hom(g, h);
    if (!r.ok()) throw std::invalid_argument(what + " is not an equivariant hom: " + r.witness);
}

// The M2-space of z restricted or extended along a map of carriers.
M2Space restricted_m2(const SemigroupG& g, const AlgPtr& carrier, const Subspace& span,
                      const std::vector<std::vector<Mat>>& ambient_blocks) {
    CornerAction ca;
    ca.n = 2;
    std::vector<Mat> gm;
    for (std::size_t k = 0; k < g.size(); ++k) {
        std::vector<Mat> bl;
        for (std::size_t c = 0; c < 4; ++c) bl.push_back(restrict_map(span, ambient_blocks[k][c], carrier->label()));
        gm.push_back(bl[0]);
        ca.blocks.push_back(std::move(bl));
    }
    ca.carrier = carrier->with_action(gm);
    return M2Space{ca, std::nullopt};
}

AlgPtr with_blocks00(const AlgPtr& carrier, const CornerAction& ca) {
    std::vector<Mat> gm;
    for (const auto& bl : ca.blocks) gm.push_back(bl[0]);
    return carrier->with_action(gm);
}

// The action on M_n(X) given on each matrix slot by block(g, slot).
Mat slotwise(std::size_t n, std::size_t d, const std::function<Mat(std::size_t, std::size_t)>& block) {
    Mat full(n * n * d, n * n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Mat b = block(i, j);
            const std::size_t off = (i * n + j) * d;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) full(off + r, off + c) = b(r, c);
        }
    return full;
}

}  // namespace

// ---- homomorphisms ----------------------------------------------------------------

FusionResult fuse_hom_left(const SemigroupG& g, const AlgebraHom& phi, const L1Element& z, bool pullback) {
    if (!same_object(phi.target, z.a))
        throw std::invalid_argument("phi . z: " + phi.label + " does not land in " + z.a->label());
    HomReport hr = check_hom(g, phi);
    if (!hr.ok()) throw std::invalid_argument("phi . z: " + phi.label + " is not an equivariant hom: " + hr.witness);
    FusionResult r;
    L1Element& out = r.out;
    out = z;
    out.label = phi.label + "*" + z.label;
    out.a = phi.source;
    AlgebraHom m = AlgebraHom::identity(z.x);
    if (hr.injective && !pullback) {
        out.s_minus = AlgebraHom(out.a, z.x, z.s_minus.matrix * phi.matrix, "s-_" + out.label);
        out.s_plus = AlgebraHom(out.a, z.x, z.s_plus.matrix * phi.matrix, "s+_" + out.label);
    } else {
        AlgebraHom sphi(out.a, z.x, z.s_minus.matrix * phi.matrix, "s-_" + out.label);
        MiddleSpace ms = middle_space(g, z.iota, sphi, "X_" + out.label);
        std::vector<std::vector<Mat>> amb;
        for (std::size_t k = 0; k < g.size(); ++k) {
            std::vector<Mat> bl;
            for (std::size_t c = 0; c < 4; ++c) bl.push_back(Mat::block_diag(z.m2.delta.blocks[k][c], out.a->act(k)));
            amb.push_back(std::move(bl));
        }
        out.m2 = restricted_m2(g, ms.algebra(), ms.carrier.span, amb);
        out.x = out.m2.delta.carrier;
        out.iota = AlgebraHom(z.j, out.x, ms.ideal.matrix, "iota_" + out.label);
        out.s_minus = AlgebraHom(out.a, out.x, ms.graph.matrix, "s-_" + out.label);
        Mat plus(out.x->dim(), out.a->dim());
        for (std::size_t c = 0; c < out.a->dim(); ++c) {
            Vec amb_vec = concat(z.s_plus.matrix.apply(phi.matrix.col(c)), out.a->basis(c));
            auto co = ms.carrier.coords(amb_vec);
            if (!co) throw CertificateFailure("phi . z: s+ o phi leaves the pullback");
            plus.set_col(c, *co);
        }
        out.s_plus = AlgebraHom(out.a, out.x, std::move(plus), "s+_" + out.label);
        m = AlgebraHom(out.x, z.x, ms.proj_m.matrix, "pr_" + out.label);
        r.middle = ms;
    }
    out.m2.delta.carrier = out.x;
    certify(g, r,
            DiagramCertificate{"phi.z " + out.label, out, z, AlgebraHom::identity(z.b), AlgebraHom::identity(z.j), m,
                               phi, std::nullopt});
    return r;
}

FusionResult fuse_hom_right(const SemigroupG& g, const L1Element& z, const AlgebraHom& phi) {
    if (!same_object(phi.source, z.b))
        throw std::invalid_argument("z . phi: " + phi.label + " does not start at " + z.b->label());
    require_hom(g, phi, "z . phi: " + phi.label);
    const Corner& f = z.exit.corner;
    const Mat psi_old = z.exit.psi ? z.exit.psi->matrix : Mat::identity(z.j->dim());
    FusionResult r;
    L1Element& out = r.out;
    out = z;
    out.label = z.label + "*" + phi.label;
    out.b = phi.target;
    AlgebraHom exit_map;
    if (f.kind == CornerKind::iso) {
        auto finv = inverse(f.hom.matrix);
        if (!finv) throw std::invalid_argument("z . phi: iso corner " + f.label + " is not invertible");
        exit_map = AlgebraHom(f.target(), phi.target, phi.matrix * *finv, "K_" + out.label);
        out.exit.corner = iso_corner(g, AlgebraHom::identity(phi.target));
        out.exit.psi = AlgebraHom(z.j, phi.target, exit_map.matrix * psi_old, "psi_" + out.label);
    } else if (f.kind == CornerKind::canonical_matrix &&
               (f.cls == Speciality::very_special || !f.sigma.empty())) {
        Corner e2 = canonical_matrix_corner(g, phi.target, f.n, f.sigma, "e_" + phi.target->label(), f.position);
        exit_map = matrix_amplify(phi, f.n, f.target(), e2.target());
        exit_map.label = phi.label + "(x)id";
        out.exit.corner = e2;
        out.exit.psi = AlgebraHom(z.j, e2.target(), exit_map.matrix * psi_old, "psi_" + out.label);
    } else {
        throw std::invalid_argument("z . phi: exit corner " + f.label +
                                    " must be an iso or a matrix corner with a product-form action");
    }
    certify(g, r,
            DiagramCertificate{"z.phi " + out.label, z, out, phi, AlgebraHom::identity(z.j),
                               AlgebraHom::identity(z.x), AlgebraHom::identity(z.a), exit_map});
    return r;
}

AbsorbedFusion fuse_hom_right_absorbing(const SemigroupG& g, const L1Element& z, const AlgebraHom& phi) {
    const Corner& f = z.exit.corner;
    if (z.exit.psi) throw std::invalid_argument("absorbing z . phi: the exit of " + z.label + " carries psi");
    if (f.kind != CornerKind::canonical_matrix || f.cls != Speciality::very_special)
        throw std::invalid_argument("absorbing z . phi: exit of " + z.label + " is not a very special matrix corner");
    if (!same_object(phi.source, z.b))
        throw std::invalid_argument("absorbing z . phi: " + phi.label + " does not start at " + z.b->label());
    require_hom(g, phi, "absorbing z . phi: " + phi.label);
    SpecialityResult spec = classify_m2(g, z);
    if (spec.cls != Speciality::very_special)
        throw std::invalid_argument("absorbing z . phi: M2-space of " + z.label + " is not very special");
    if (!z.j->unit()) throw std::invalid_argument("absorbing z . phi: " + z.j->label() + " has no unit");

    AbsorbedFusion res;
    FusionResult& r = res.fusion;
    L1Element& out = r.out;
    const std::size_t n = f.n;
    const AlgPtr& y = phi.target;
    res.exit = canonical_matrix_corner(g, y, n, f.sigma, "e_" + y->label(), f.position);
    const AlgPtr& ju = res.exit.target();
    AlgebraHom psi = matrix_amplify(phi, n, z.j, ju);
    psi.label = phi.label + "(x)id";

    Subspace ij = column_span(z.iota.matrix);
    const Vec ip = z.iota.matrix.apply(*z.j->unit());
    Mat theta(ju->dim(), z.x->dim());
    for (std::size_t k = 0; k < z.x->dim(); ++k) {
        auto co = ij.coords(z.x->mul(z.x->basis(k), ip));
        if (!co) throw CertificateFailure("absorbing z . phi: x p leaves iota(J)");
        theta.set_col(k, psi.matrix.apply(*co));
    }
    out.label = z.label + "*" + phi.label;
    AlgPtr xu_raw = direct_sum(ju, z.a, "X_" + out.label);
    CornerAction cu = CornerAction::product(2, xu_raw, spec.gamma, actions_of(g, xu_raw));
    if (cu.blocks.size() != g.size()) cu = CornerAction::trivial(2, xu_raw, g.size());
    AlgPtr xu = with_blocks00(xu_raw, cu);
    cu.carrier = xu;
    res.theta = AlgebraHom(z.x, ju, theta, "theta_" + out.label);

    out.b = y;
    out.j = ju;
    out.x = xu;
    out.a = z.a;
    out.exit = Exit{res.exit, std::nullopt};
    out.iota = AlgebraHom(ju, xu, sum_inclusion(xu_raw, ju, 0).matrix, "iota_" + out.label);
    const Mat id_a = Mat::identity(z.a->dim());
    out.s_minus = AlgebraHom(z.a, xu, stack(theta * z.s_minus.matrix, id_a), "s-_" + out.label);
    out.s_plus = AlgebraHom(z.a, xu, stack(theta * z.s_plus.matrix, id_a), "s+_" + out.label);
    out.m2 = M2Space{cu, std::nullopt};
    AlgebraHom m(z.x, xu, stack(theta, derive_f(z).matrix), "m_" + out.label);
    certify(g, r, DiagramCertificate{"absorb " + out.label, z, out, phi, psi, m, AlgebraHom::identity(z.a), psi});
    return res;
}

// ---- inverse corners ----------------------------------------------------------------

namespace {

const char* kInvCornerRow = "e^-1 . z";
const char* kInvCornerCondition = "<=> exists u in L1: e . u = z";

// Left and right multiplication on X by s^+(w) for w in A+ = A (+) c.
struct UnitizedSide {
    const AlgPtr& x;
    const Mat& s;
    const std::vector<Mat>* idem_action;  // action on X of each idempotent of c

    Mat left(const Vec& w) const { return combine(w, true); }
    Mat right(const Vec& w) const { return combine(w, false); }

    Mat combine(const Vec& w, bool left_side) const {
        const std::size_t da = s.cols();
        Vec core = s.apply(slice(w, 0, da));
        Mat out = left_side ? x->left_mult(core) : x->right_mult(core);
        for (std::size_t k = 0; k + da < w.size(); ++k)
            if (!w[da + k].is_zero()) out += w[da + k] * (*idem_action)[k];
        return out;
    }
};

FusionResult fuse_matrix_corner_left(const SemigroupG& g, const Corner& e, const L1Element& z) {
    const std::size_t n = e.n, p = e.position, dx = z.x->dim();
    const bool very = e.cls == Speciality::very_special;
    if (!very) {
        if (e.cls != Speciality::special) throw Refusal(kInvCornerRow, kInvCornerCondition);
        Speciality zc = Speciality::neither;
        try {
            zc = classify_m2(g, z).cls;
        } catch (const Undetermined&) {
        }
        if (zc == Speciality::neither)
            throw Refusal(kInvCornerRow, "special corner needs a special M2-space on " + z.label);
        if (z.exit.psi) throw std::invalid_argument("e^-1 . z: psi exits are supported for very special corners only");
    }

    // blocks[g][ab] of the new M2-action on M_n(X)
    std::vector<std::vector<Mat>> blocks(g.size());
    if (very) {
        for (std::size_t k = 0; k < g.size(); ++k)
            for (std::size_t c = 0; c < 4; ++c)
                blocks[k].push_back(kron(e.sigma.empty() ? Mat::identity(n * n) : e.sigma[k], z.m2.delta.blocks[k][c]));
    } else {
        if (!e.speciality || !e.speciality->extension || e.speciality->route != "unital-carrier")
            throw std::invalid_argument("e^-1 . z: special corner " + e.label + " needs a unital carrier");
        const Extension& ext = *e.speciality->extension;
        CornerAction w_action = CornerAction::from_full(n, ext.unitized, ext.matrix->action());
        const Vec one = *ext.unitized->unit();
        CAlgebra c = build_c_algebra(g);
        std::vector<Mat> idem_minus, idem_plus;
        for (std::size_t idem : c.idempotents) {
            idem_minus.push_back(z.m2.gamma_minus(idem));
            idem_plus.push_back(z.m2.gamma_plus(idem));
        }
        const UnitizedSide sides[2] = {{z.x, z.s_minus.matrix, &idem_minus}, {z.x, z.s_plus.matrix, &idem_plus}};
        for (std::size_t k = 0; k < g.size(); ++k)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    const Mat& inner = z.m2.delta.blocks[k][a * 2 + b];
                    blocks[k].push_back(slotwise(n, dx, [&](std::size_t i, std::size_t j) {
                        Vec wl = w_action.block(k, i, p).apply(one);
                        Vec wr = w_action.block(k, p, j).apply(one);
                        return sides[a].left(wl) * inner * sides[b].right(wr);
                    }));
                }
    }

    FusionResult r;
    L1Element& out = r.out;
    out.label = "inv(" + e.label + ")*" + z.label;
    const std::string ns = std::to_string(n);
    CornerAction delta;
    delta.n = 2;
    delta.blocks = blocks;
    AlgPtr x_raw = matrix_algebra(n, z.x->with_action({}), {}, "M" + ns + "(" + z.x->label() + ")");
    out.x = with_blocks00(x_raw, delta);
    delta.carrier = out.x;
    out.m2 = M2Space{delta, std::nullopt};

    AlgebraHom iota_n = matrix_amplify(z.iota, n, matrix_algebra(n, z.j->with_action({})), x_raw);
    Subspace ij = column_span(iota_n.matrix);
    std::vector<Mat> j_action;
    for (std::size_t k = 0; k < g.size(); ++k) j_action.push_back(restrict_map(ij, blocks[k][0], "M_n(J)"));
    Corner e_j = matrix_corner(g, CornerAction::from_full(n, z.j, j_action), "e_" + z.j->label(), p);
    out.j = e_j.target();
    out.iota = AlgebraHom(out.j, out.x, iota_n.matrix, "iota_" + out.label);
    out.a = e.target();
    out.b = z.b;
    out.s_minus = AlgebraHom(out.a, out.x, matrix_amplify(z.s_minus, n, out.a, out.x).matrix, "s-_" + out.label);
    out.s_plus = AlgebraHom(out.a, out.x, matrix_amplify(z.s_plus, n, out.a, out.x).matrix, "s+_" + out.label);

    AlgebraHom exit_map = e_j.hom;
    if (z.exit.psi) {
        const AlgPtr& k_obj = z.exit.corner.target();
        Corner e_k = canonical_matrix_corner(g, k_obj, n, e.sigma, "e_" + k_obj->label(), p);
        out.exit.psi = AlgebraHom(out.j, e_k.target(), matrix_amplify(*z.exit.psi, n, out.j, e_k.target()).matrix,
                                  "psi_" + out.label);
        out.exit.corner = compose_corners(z.exit.corner, e_k);
        exit_map = e_k.hom;
    } else {
        out.exit.corner = compose_corners(z.exit.corner, e_j);
    }
    AlgebraHom m(z.x, out.x, corner_matrix(n, dx, p), "e_" + z.x->label());
    certify(g, r,
            DiagramCertificate{"e^-1.z " + out.label, z, out, AlgebraHom::identity(z.b), e_j.hom, m, e.hom, exit_map});
    return r;
}

}  // namespace

FusionResult fuse_inv_corner_left(const SemigroupG& g, const Corner& e, const L1Element& z) {
    if (!same_object(e.source(), z.a))
        throw std::invalid_argument("e^-1 . z: corner " + e.label + " does not start at " + z.a->label());
    switch (e.kind) {
        case CornerKind::iso: {
            auto inv = inverse(e.hom.matrix);
            if (!inv) throw std::invalid_argument("e^-1 . z: iso corner " + e.label + " is not invertible");
            return fuse_hom_left(g, AlgebraHom(e.target(), e.source(), *inv, e.label + "^-1"), z);
        }
        case CornerKind::canonical_matrix: return fuse_matrix_corner_left(g, e, z);
        case CornerKind::composite: {
            // e = factors.back() o ... o factors[0], so e^-1 . z peels factors[0] first.
            FusionResult acc;
            acc.out = z;
            for (const Corner& part : e.factors) {
                FusionResult step = fuse_inv_corner_left(g, part, acc.out);
                acc.out = step.out;
                acc.certificates.insert(acc.certificates.end(), step.certificates.begin(), step.certificates.end());
                acc.reports.insert(acc.reports.end(), step.reports.begin(), step.reports.end());
            }
            return acc;
        }
        case CornerKind::module: break;
    }
    throw Refusal(kInvCornerRow, kInvCornerCondition);
}

FusionResult fuse_inv_corner_right(const SemigroupG& g, const L1Element& z, const Corner& e) {
    if (!same_object(e.target(), z.b))
        throw std::invalid_argument("z . e^-1: corner " + e.label + " does not land in " + z.b->label());
    if (auto rep = check_corner(g, e); !rep.ok) throw std::invalid_argument("z . e^-1: " + rep.witness);
    FusionResult r;
    L1Element& out = r.out;
    out = z;
    out.label = z.label + "*inv(" + e.label + ")";
    out.b = e.source();
    out.exit.corner = compose_corners(e, z.exit.corner);
    certify(g, r,
            DiagramCertificate{"z.e^-1 " + out.label, out, z, e.hom, AlgebraHom::identity(z.j),
                               AlgebraHom::identity(z.x), AlgebraHom::identity(z.a),
                               AlgebraHom::identity(z.exit.corner.target())});
    return r;
}

// ---- approximate units and adjointable extensions ----------------------------------

ApproxUnitReport check_approx_unit(const ApproxUnit& u) {
    ApproxUnitReport r;
    const Algebra& a = *u.carrier;
    auto fail = [&](std::string w) {
        r.ok = false;
        r.witness = std::move(w);
        return r;
    };
    if (u.chain.empty()) return fail("empty chain");
    for (std::size_t i = 0; i < u.chain.size(); ++i) {
        if (u.chain[i].size() != a.dim()) return fail("p_" + std::to_string(i + 1) + " has the wrong length");
        for (std::size_t j = 0; j < u.chain.size(); ++j) {
            const Vec& lo = u.chain[std::min(i, j)];
            if (a.mul(u.chain[i], u.chain[j]) != lo)
                return fail("p_" + std::to_string(i + 1) + " p_" + std::to_string(j + 1) + " != p_" +
                            std::to_string(std::min(i, j) + 1));
        }
    }
    const Vec& top = u.chain.back();
    for (std::size_t k = 0; k < a.dim(); ++k) {
        const Vec b = a.basis(k);
        if (a.mul(b, top) != b || a.mul(top, b) != b)
            return fail("p_N is not a unit: fails on basis element " + std::to_string(k));
    }
    r.index = u.chain.size();
    return r;
}

Mat OperatorHom::operator()(const Vec& a) const {
    Mat out(vdim, vdim);
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!a[k].is_zero()) out += a[k] * images[k];
    return out;
}

Mat AdjointableExtension::apply(const Mat& u) const { return phi(u.apply(top)); }

AdjointableExtension extend_to_adjointables(const SemigroupG& g, const OperatorHom& phi, const ApproxUnit& u,
                                            const std::optional<OperatorHom>& s) {
    const char* row = "extension to adjointables";
    const AlgPtr& a = phi.source;
    if (!same_object(u.carrier, a)) throw std::invalid_argument("approximate unit lives on another algebra");
    ApproxUnitReport ur = check_approx_unit(u);
    if (!ur.ok) throw Refusal(row, ur.witness);
    AdjointableExtension ext;
    ext.phi = phi;
    ext.top = u.chain.back();
    ext.index = ur.index;
    const Mat pn = phi(ext.top);
    for (std::size_t c = 0; c < phi.vdim; ++c) {
        Vec x = unit_vec(phi.vdim, c);
        if (pn.apply(x) != x) throw Refusal(row, "phi(p_N) x != x for x = " + to_string(x));
    }
    ext.domain = compute_adjointables(g, FunctionalModule::regular(a));
    const std::size_t dd = ext.domain.algebra()->dim();
    std::vector<Mat> ops;
    for (std::size_t k = 0; k < dd; ++k) {
        ops.push_back(ext.domain.op(unit_vec(dd, k)));
        ext.images.push_back(ext.apply(ops.back()));
    }
    auto note = [&](const std::string& w) {
        if (ext.witness.empty()) ext.witness = w;
    };

    ext.multiplicative = true;
    for (std::size_t i = 0; i < dd && ext.multiplicative; ++i)
        for (std::size_t j = 0; j < dd; ++j)
            if (ext.apply(ops[i] * ops[j]) != ext.images[i] * ext.images[j]) {
                ext.multiplicative = false;
                note("phi-bar(U_" + std::to_string(i) + " U_" + std::to_string(j) + ") is not the product");
                break;
            }

    ext.equivariant = true;
    std::vector<Mat> a_act = actions_of(g, a);
    std::vector<Mat> v_act;
    for (std::size_t k = 0; k < g.size(); ++k)
        v_act.push_back(phi.v_action.empty() ? Mat::identity(phi.vdim) : phi.v_action[k]);
    std::vector<Mat> ad_a = adjoint_action(g, a_act, a_act);
    std::vector<Mat> ad_v = adjoint_action(g, v_act, v_act);
    for (std::size_t k = 0; k < g.size() && ext.equivariant; ++k)
        for (std::size_t i = 0; i < dd; ++i) {
            Mat gu = Mat::unflatten(a->dim(), a->dim(), ad_a[k].apply(ops[i].flatten()));
            Mat lhs = ext.apply(gu);
            Mat rhs = Mat::unflatten(phi.vdim, phi.vdim, ad_v[k].apply(ext.images[i].flatten()));
            if (lhs != rhs) {
                ext.equivariant = false;
                note("phi-bar is not equivariant at g=" + g.name(k) + " on U_" + std::to_string(i));
                break;
            }
        }

    ext.extends = true;
    for (std::size_t k = 0; k < a->dim(); ++k)
        if (ext.apply(a->left_mult(a->basis(k))) != phi.images[k]) {
            ext.extends = false;
            note("phi-bar(L_a) != phi(a) for basis element " + std::to_string(k));
            break;
        }

    if (s) {
        const OperatorHom& sm = *s;
        for (std::size_t i = 0; i < a->dim() && ext.bimodule_input; ++i)
            for (std::size_t j = 0; j < a->dim(); ++j) {
                Mat sab = sm(a->mul(a->basis(i), a->basis(j)));
                if (sab != sm.images[i] * phi.images[j] || sab != phi.images[i] * sm.images[j]) {
                    ext.bimodule_input = false;
                    note("s is not a bimodule map on basis pair " + std::to_string(i) + "," + std::to_string(j));
                    break;
                }
            }
        for (std::size_t i = 0; i < a->dim() && ext.bimodule_left; ++i)
            for (std::size_t v = 0; v < dd; ++v) {
                const Vec ai = a->basis(i);
                Mat s_av = sm(a->mul(ai, ops[v].apply(ext.top)));
                Mat s_va = sm(ops[v].apply(ai));
                if (s_av != sm.images[i] * ext.images[v] || s_va != ext.images[v] * sm.images[i]) {
                    ext.bimodule_left = false;
                    note("s(aV) or s(Va) fails for a_" + std::to_string(i) + ", V_" + std::to_string(v));
                    break;
                }
            }
        auto sbar = [&](const Mat& op) { return sm(op.apply(ext.top)); };
        for (std::size_t i = 0; i < dd && ext.bimodule_bar; ++i)
            for (std::size_t j = 0; j < dd; ++j) {
                Mat suv = sbar(ops[i] * ops[j]);
                if (suv != sbar(ops[i]) * ext.images[j] || suv != ext.images[i] * sbar(ops[j])) {
                    ext.bimodule_bar = false;
                    note("s-bar(UV) fails for U_" + std::to_string(i) + ", V_" + std::to_string(j));
                    break;
                }
            }
    }
    return ext;
}

// ---- splits ---------------------------------------------------------------------------

SplitFusion fuse_split(const SemigroupG& g, const SplitExactSeq& seq, const DiagramCertificate& witness) {
    const L1Element& u = witness.top;
    const L1Element& v = witness.bottom;
    if (!same_object(v.a, seq.X()) || !same_object(u.a, seq.J()))
        throw std::invalid_argument("Delta_s . u: witness rows do not match the sequence " + seq.label);
    if (witness.e.matrix != seq.iota.matrix || !witness.k.matrix.is_identity())
        throw std::invalid_argument("Delta_s . u: the witness must have e = iota and k = id");
    SplitFusion out;
    DiagramReport wrep = check_diagram(g, witness);
    if (!wrep.ok) throw CertificateFailure("witness u = iota . v fails: " + wrep.condition + ": " + wrep.witness);
    out.certificates.push_back(wrep);

    AlgebraHom fs(seq.X(), seq.X(), seq.s.matrix * seq.f.matrix, "f.s");
    FusionResult w = fuse_hom_left(g, fs, v);
    out.certificates.insert(out.certificates.end(), w.reports.begin(), w.reports.end());
    out.summands = {{1, v}, {-1, w.out}};
    out.word = level_one_word(g, v) - level_one_word(g, w.out);

    FactStore facts;
    facts.add(*wrep.fact);
    // The second summand enters as fs . v (certified equal to w.out above) so
    // that iota . fs = 0 can act on it.
    MorphismWord unfused = level_one_word(g, v) - MorphismWord::of({Token::of(fs)}).then(level_one_word(g, v));
    MorphismWord iota_z = MorphismWord::of({Token::of(seq.iota)}).then(unfused);
    NormalizeOptions opts;
    opts.facts = &facts;
    out.converse = normalize(iota_z - level_one_word(g, u), opts, &out.converse_log).is_zero();
    return out;
}

SplitFusion fuse_unitization_split(const SemigroupG& g, const L1Element& z) {
    const char* row = "Delta_A . z";
    SpecialityResult spec;
    try {
        spec = classify_m2(g, z);
    } catch (const Undetermined& ex) {
        throw Refusal(row, std::string("N: speciality of the M2-space is undetermined (") + ex.what() + ")");
    }
    if (spec.cls == Speciality::neither) throw Refusal(row, "N: the M2-space is not special");

    SplitExactSeq seq = unitization_split(g, z.a);
    AdjoinedUnit xu = adjoin_unit(g, z.x);
    CornerAction ext;
    if (spec.cls == Speciality::very_special) {
        ext = CornerAction::product(2, xu.plus, spec.gamma, actions_of(g, xu.plus));
        if (ext.blocks.size() != g.size()) ext = CornerAction::trivial(2, xu.plus, g.size());
    } else if (spec.route == "unital-carrier" && spec.extension) {
        ext = CornerAction::from_full(2, xu.plus, spec.extension->matrix->action());
    } else {
        throw std::invalid_argument("Delta_A . z: special M2-space on a non-unital carrier is not supported");
    }
    AlgPtr xp = with_blocks00(xu.plus, ext);
    ext.carrier = xp;

    const std::size_t m = xu.c.idempotents.size();
    const AlgPtr& ap = seq.X();
    L1Element v;
    v.label = z.label + "+";
    v.b = z.b;
    v.j = z.j;
    v.x = xp;
    v.a = ap;
    v.exit = z.exit;
    v.iota = AlgebraHom(z.j, xp, xu.inclusion.matrix * z.iota.matrix, "iota_" + v.label);
    v.s_minus = AlgebraHom(ap, xp, Mat::block_diag(z.s_minus.matrix, Mat::identity(m)), "s-_" + v.label);
    v.s_plus = AlgebraHom(ap, xp, Mat::block_diag(z.s_plus.matrix, Mat::identity(m)), "s+_" + v.label);
    v.m2 = M2Space{ext, std::nullopt};

    DiagramCertificate witness{"extend " + z.label, z, v, AlgebraHom::identity(z.b), AlgebraHom::identity(z.j),
                               AlgebraHom(z.x, xp, xu.inclusion.matrix, "incl_" + z.x->label()), seq.iota,
                               std::nullopt};
    return fuse_split(g, seq, witness);
}

}  // namespace gk
