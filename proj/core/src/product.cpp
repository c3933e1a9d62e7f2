#include "gk/product.hpp"

#include <stdexcept>

namespace gk {

namespace {

const char* kRow = "t . s";

bool same_object(const AlgPtr& a, const AlgPtr& b) { return a->label() == b->label() && a->dim() == b->dim(); }

Subspace column_span(const Mat& m) {
    Subspace s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) s.add(m.col(c));
    return s;
}

Mat stack(const Mat& top, const Mat& bottom) {
    Mat m(top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) m(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < bottom.cols(); ++c) m(top.rows() + r, c) = bottom(r, c);
    return m;
}

Mat side_by_side(const Mat& left, const Mat& right) { return stack(left.transpose(), right.transpose()).transpose(); }


// Coordinates of each column of m inside the span.
Mat coords_in(const Subspace& span, const Mat& m, const std::string& what) {
    Mat out(span.dim(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        auto co = span.coords(m.col(c));
        if (!co) throw CertificateFailure(what + ": column " + std::to_string(c) + " leaves the expected span");
        out.set_col(c, *co);
    }
    return out;
}

AlgPtr with_blocks00(const AlgPtr& carrier, const CornerAction& ca) {
    std::vector<Mat> gm;
    for (const auto& bl : ca.blocks) gm.push_back(bl[0]);
    return carrier->with_action(gm);
}

// The same M2-blocks moved to another carrier of equal dimension.
M2Space rebased_m2(const AlgPtr& carrier, std::vector<std::vector<Mat>> blocks) {
    CornerAction ca;
    ca.n = 2;
    ca.blocks = std::move(blocks);
    ca.carrier = with_blocks00(carrier, ca);
    return M2Space{ca, std::nullopt};
}

void certify(const SemigroupG& g, PipelineTrace& tr, const std::string& step, DiagramCertificate c) {
    DiagramReport rep = check_diagram(g, c);
    if (!rep.ok) throw CertificateFailure("line " + step + ": " + rep.condition + ": " + rep.witness);
    tr.certificates.push_back({step, std::move(c), std::move(rep)});
}

void adopt(PipelineTrace& tr, const std::string& step, const FusionResult& r) {
    for (std::size_t k = 0; k < r.certificates.size(); ++k)
        tr.certificates.push_back({step, r.certificates[k], r.reports[k]});
}

// tau o (phi (x) id): M_n(d) -> End(M_n(X)) on the basis of M_n(d).
std::vector<Mat> phi_infinity(std::size_t n, const OperatorHom& phi) {
    const std::size_t dd = phi.images.size();
    std::vector<Mat> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < dd; ++q) {
                Mat eil(n, n);
                eil(i, l) = 1;
                out.push_back(kron(eil, kron(Mat::identity(n), phi.images[q])));
            }
    return out;
}

Mat combine(const std::vector<Mat>& basis_images, const Vec& coeffs, std::size_t rows, std::size_t cols) {
    Mat out(rows, cols);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero()) out += coeffs[k] * basis_images[k];
    return out;
}

void check_hypotheses(const SemigroupG& g, const ProductRequest& req, const AlgebraHom& phi_factor, const Corner& e) {
    const L1Element& s = req.s;
    const L1Element& t = req.t;
    for (const L1Element* z : {&s, &t}) {
        L1Report r = validate_l1(g, *z);
        if (!r.ok) throw Refusal(kRow, "input " + z->label + " is not a level-one element: " + r.condition + ": " + r.witness);
    }
    if (!same_object(t.b, s.a))
        throw Refusal(kRow, "t ends at " + t.b->label() + " but s starts at " + s.a->label());
    if (e.kind != CornerKind::canonical_matrix || e.cls != Speciality::very_special)
        throw Refusal(kRow, "the corner e of t must be a very special matrix corner");
    if (!same_object(phi_factor.target, e.target()))
        throw Refusal(kRow, "the exit hom of t must land in " + e.target()->label());
    for (const L1Element* z : {&s, &t}) {
        Speciality c = Speciality::neither;
        try {
            c = classify_m2(g, *z).cls;
        } catch (const Undetermined&) {
        }
        if (c == Speciality::neither) throw Refusal(kRow, "the M2-space of " + z->label + " must be special");
    }
    const OperatorHom& phi = req.phi_data;
    const std::size_t dx = s.x->dim();
    if (!same_object(phi.source, s.a) || phi.vdim != dx || phi.images.size() != s.a->dim())
        throw Refusal(kRow, "phi must map " + s.a->label() + " into End(" + s.x->label() + ")");
    // phi is a hom into the right X-module maps of X.
    for (std::size_t i = 0; i < s.a->dim(); ++i) {
        for (std::size_t j = 0; j < s.a->dim(); ++j)
            if (phi(s.a->mul(s.a->basis(i), s.a->basis(j))) != phi.images[i] * phi.images[j])
                throw Refusal(kRow, "phi is not multiplicative on basis pair " + std::to_string(i) + "," + std::to_string(j));
        for (std::size_t k = 0; k < dx; ++k)
            if (phi.images[i] * s.x->right_mult(s.x->basis(k)) != s.x->right_mult(s.x->basis(k)) * phi.images[i])
                throw Refusal(kRow, "phi(d_" + std::to_string(i) + ") is not a right module map of " + s.x->label());
    }
    // equivariance for ad(gamma-) and ad(gamma+)
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t side = 0; side < 2; ++side) {
            const Mat& gam = side == 0 ? s.m2.gamma_minus(k) : s.m2.gamma_plus(k);
            const Mat& gam_star = side == 0 ? s.m2.gamma_minus(g.star(k)) : s.m2.gamma_plus(g.star(k));
            for (std::size_t i = 0; i < s.a->dim(); ++i)
                if (phi(s.a->act(k).col(i)) != gam * phi.images[i] * gam_star)
                    throw Refusal(kRow, std::string("phi is not equivariant for ad(gamma") + (side ? "+" : "-") +
                                            ") at g=" + g.name(k));
        }
    // s+- are d-bimodule maps
    for (const AlgebraHom* sp : {&s.s_minus, &s.s_plus})
        for (std::size_t i = 0; i < s.a->dim(); ++i)
            for (std::size_t j = 0; j < s.a->dim(); ++j) {
                const Vec ci = sp->matrix.col(i), dj = sp->matrix.col(j);
                Mat lhs = s.x->left_mult(sp->matrix.apply(s.a->mul(s.a->basis(i), s.a->basis(j))));
                if (lhs != s.x->left_mult(ci) * phi.images[j] || lhs != phi.images[i] * s.x->left_mult(dj))
                    throw Refusal(kRow, sp->label + " is not a bimodule map on basis pair " + std::to_string(i) + "," +
                                            std::to_string(j));
            }
    ApproxUnit u = req.unit;
    if (!same_object(u.carrier, t.j)) throw Refusal(kRow, "the approximate unit must live on " + t.j->label());
    if (auto r = check_approx_unit(u); !r.ok) throw Refusal(kRow, "approximate unit: " + r.witness);
}

}  // namespace

bool PipelineTrace::ok() const {
    if (lines.size() != 8 || certificates.empty()) return false;
    for (const auto& c : certificates)
        if (!c.report.ok) return false;
    return closed_form_ok && exit_rotation_ok && output_class != Speciality::neither &&
           theta_bar_minus.ok() && theta_bar_plus.ok();
}

OperatorHom central_phi(const SemigroupG& g, const L1Element& s) {
    CAlgebra c = build_c_algebra(g);
    if (s.a->dim() != c.idempotents.size())
        throw std::invalid_argument("central phi: " + s.a->label() + " is not the algebra of idempotents");
    OperatorHom phi;
    phi.source = s.a;
    phi.vdim = s.x->dim();
    for (std::size_t e : c.idempotents) phi.images.push_back(s.m2.gamma_minus(e));
    for (std::size_t k = 0; k < g.size(); ++k) phi.v_action.push_back(s.m2.gamma_minus(k));
    return phi;
}

ProductResult product_khom_ktheory(const SemigroupG& g, const ProductRequest& req) {
    const L1Element& s = req.s;
    const L1Element& t = req.t;
    const Corner& e = t.exit.corner;
    const AlgebraHom phi_factor = t.exit.psi ? *t.exit.psi : AlgebraHom::identity(e.target());
    if (!t.exit.psi && !same_object(e.target(), t.j))
        throw Refusal(kRow, "the exit corner of t must land in " + t.j->label());
    check_hypotheses(g, req, phi_factor, e);

    ProductResult res;
    PipelineTrace& tr = res.trace;
    const std::string p = req.label;
    tr.n = e.n;
    tr.s_very_special = classify_m2(g, s).cls == Speciality::very_special;
    tr.lines.push_back(s);

    // Line 2: e^-1 . s
    FusionResult l2 = fuse_inv_corner_left(g, e, s);
    adopt(tr, "1->2", l2);
    const L1Element& u = l2.out;
    tr.lines.push_back(u);

    // Line 3: phi . line 2 through the pullback x = M_n(X) box_{S-} k
    FusionResult l3 = fuse_hom_left(g, phi_factor, u, true);
    adopt(tr, "3->2", l3);
    L1Element line3 = l3.out;
    const MiddleSpace& ms3 = *l3.middle;
    tr.xbold = ms3.carrier;
    tr.S_minus = line3.s_minus;
    tr.S_plus = line3.s_plus;
    tr.lines.push_back(line3);
    const AlgPtr& xb = line3.x;
    const AlgPtr& kk = t.j;
    const std::size_t dxb = xb->dim(), dk = kk->dim(), db = t.a->dim();

    // theta(k) = phi_inf(phi(k)) (+) k acting on x
    std::vector<Mat> phinf = phi_infinity(e.n, req.phi_data);
    for (std::size_t i = 0; i < dk; ++i) {
        Vec pk = phi_factor.matrix.col(i);
        Mat on_m = combine(phinf, pk, u.x->dim(), u.x->dim());
        Mat amb = Mat::block_diag(on_m, kk->left_mult(kk->basis(i)));
        tr.theta.push_back(restrict_map(ms3.carrier.span, amb, "theta(k_" + std::to_string(i) + ")"));
    }
    // theta-bar by the approximate unit, checked against S- and S+
    for (std::size_t side = 0; side < 2; ++side) {
        OperatorHom th;
        th.source = kk;
        th.vdim = dxb;
        th.images = tr.theta;
        for (std::size_t k = 0; k < g.size(); ++k) th.v_action.push_back(line3.m2.delta.block(k, side, side));
        OperatorHom sop;
        sop.source = kk;
        sop.vdim = dxb;
        const AlgebraHom& S = side == 0 ? line3.s_minus : line3.s_plus;
        for (std::size_t i = 0; i < dk; ++i) sop.images.push_back(xb->left_mult(S.matrix.col(i)));
        AdjointableExtension ext = extend_to_adjointables(g, th, req.unit, sop);
        if (!ext.ok()) throw CertificateFailure("theta-bar: " + ext.witness);
        (side == 0 ? tr.theta_bar_minus : tr.theta_bar_plus) = std::move(ext);
    }
    tr.stabilization_index = tr.theta_bar_minus.index;

    // T-(b) = theta-bar(t-(b) acting on k)
    Subspace kspan = column_span(t.iota.matrix);
    for (std::size_t b = 0; b < db; ++b) {
        Mat ub(dk, dk);
        for (std::size_t i = 0; i < dk; ++i) {
            auto co = kspan.coords(t.x->mul(t.s_minus.matrix.col(b), t.iota.matrix.col(i)));
            if (!co) throw CertificateFailure("t-(b) does not multiply k into k");
            ub.set_col(i, *co);
        }
        if (!tr.theta_bar_minus.domain.coords_of(ub))
            throw CertificateFailure("t-(b_" + std::to_string(b) + ") is not an adjointable operator on k");
        tr.T_minus.push_back(tr.theta_bar_minus.apply(ub));
    }

    // L(x): the algebra generated by left multiplications and T-(B) in End(x)
    Ambient end_x = Ambient::endomorphisms(dxb);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < dxb; ++i) gens.push_back(xb->left_mult(xb->basis(i)).flatten());
    for (const Mat& tm : tr.T_minus) gens.push_back(tm.flatten());
    std::vector<Mat> omega[2];
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t side = 0; side < 2; ++side) omega[side].push_back(line3.m2.delta.block(k, side, side));
    std::vector<Mat> ad[2][2];
    std::vector<Mat> all_ad;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            ad[a][b] = adjoint_action(g, omega[b], omega[a]);
            all_ad.insert(all_ad.end(), ad[a][b].begin(), ad[a][b].end());
        }
    Subalgebra lx = subalgebra_from_span(end_x, closure(end_x, gens, all_ad), "L(" + xb->label() + ")", ad[0][0]);
    AlgebraHom lmul(xb, lx.algebra, coords_in(lx.span, Mat::from_cols(dxb * dxb, std::vector<Vec>(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(dxb))), "L"), "L");
    if (rank(lmul.matrix) != dxb) throw CertificateFailure("left multiplication on " + xb->label() + " is not faithful");
    std::vector<Vec> tcols;
    for (const Mat& tm : tr.T_minus) tcols.push_back(tm.flatten());
    AlgebraHom tminus(t.a, lx.algebra, coords_in(lx.span, Mat::from_cols(dxb * dxb, tcols), "T-"), "T-");

    // Line 7 blocks on L(x) (+) B, restricted to L(x) box_{T-} B
    MiddleSpace ms7 = middle_space(g, lmul, tminus, "L(" + xb->label() + ")[]" + t.a->label());
    std::vector<std::vector<Mat>> blocks7;
    for (std::size_t k = 0; k < g.size(); ++k) {
        std::vector<Mat> bl;
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                Mat on_lx = restrict_map(lx.span, ad[a][b][k], "ad(Omega)");
                bl.push_back(restrict_map(ms7.carrier.span, Mat::block_diag(on_lx, t.a->act(k)), "line 7 M2-block"));
            }
        blocks7.push_back(std::move(bl));
    }
    tr.line7_to_operators = Mat::block_diag(lx.embedding, Mat::identity(db)) * ms7.carrier.embedding;

    // Line 4: x (+)_{T-} B over k (+)_{t-} B, with the line 7 action moved back by zeta
    const Mat zeta1 = side_by_side(t.iota.matrix, t.s_minus.matrix);  // k (+) B -> X_t
    auto zeta1_inv = inverse(zeta1);
    if (!zeta1_inv) throw CertificateFailure("zeta_1 is not invertible: X_t is not k + t-(B)");
    std::vector<Mat> k4_action;
    std::vector<std::vector<Mat>> t_blocks;
    for (std::size_t k = 0; k < g.size(); ++k) {
        std::vector<Mat> bl;
        for (std::size_t c = 0; c < 4; ++c) bl.push_back(*zeta1_inv * t.m2.delta.blocks[k][c] * zeta1);
        k4_action.push_back(bl[0]);
        t_blocks.push_back(std::move(bl));
    }
    AlgPtr k4 = oplus_algebra(t.iota, t.s_minus, kk->label() + "(+)" + t.a->label())->with_action(k4_action);
    AlgPtr x4_raw = oplus_algebra(lmul, tminus, xb->label() + "(+)" + t.a->label());
    L1Element line4;
    line4.label = p + "/4";
    line4.b = line3.b;
    line4.j = line3.j;
    line4.exit = line3.exit;
    line4.m2 = rebased_m2(x4_raw, blocks7);
    line4.x = line4.m2.delta.carrier;
    line4.a = k4;
    line4.iota = AlgebraHom(line4.j, line4.x, stack(line3.iota.matrix, Mat(db, line3.j->dim())), "iota_" + line4.label);
    line4.s_minus = AlgebraHom(k4, line4.x, Mat::block_diag(line3.s_minus.matrix, Mat::identity(db)), "s-_" + line4.label);
    line4.s_plus = AlgebraHom(k4, line4.x, Mat::block_diag(line3.s_plus.matrix, Mat::identity(db)), "s+_" + line4.label);
    tr.lines.push_back(line4);
    const AlgebraHom into_x4(xb, line4.x, stack(Mat::identity(dxb), Mat(db, dxb)), "id(+)0");
    const AlgebraHom into_k4(kk, k4, stack(Mat::identity(dk), Mat(db, dk)), "id(+)0");
    certify(g, tr, "3->4",
            DiagramCertificate{"3->4", line3, line4, AlgebraHom::identity(line3.b), AlgebraHom::identity(line3.j),
                               into_x4, into_k4, std::nullopt});

    // Delta_{t-} . line 3 = line 4 in the word calculus
    {
        SplitExactSeq seq = make_split("t-", into_k4, AlgebraHom(t.a, k4, stack(Mat(dk, db), Mat::identity(db)), "0(+)id"));
        // A degenerate line 3 (s+ = s-) has a word that normalizes to zero and
        // gives no usable fact; the step is informational, so it is just marked.
        try {
            FactStore facts;
            facts.add(*tr.certificates.back().report.fact);
            NormalizeOptions opts;
            opts.facts = &facts;
            MorphismWord lhs = MorphismWord::of({Token::delta(seq)}).then(level_one_word(g, line3));
            MorphismWord diff = normalize(lhs - level_one_word(g, line4), opts, &tr.split_step);
            tr.split_step_ok = diff.is_zero();
        } catch (const std::invalid_argument&) {
            tr.split_step_ok = false;
        }
    }

    // Line 5: e1^-1 . line 4, e1 the upper corner of the M2-space of t moved to k (+)_{t-} B
    SpecialityResult tspec = classify_m2(g, t);
    Corner e1, e2;
    if (tspec.cls == Speciality::very_special) {
        e1 = canonical_matrix_corner(g, k4, 2, tspec.gamma, "e1_" + p, 0);
        e2 = canonical_matrix_corner(g, k4, 2, tspec.gamma, "e2_" + p, 1);
    } else {
        CornerAction ca;
        ca.n = 2;
        ca.carrier = k4;
        ca.blocks = t_blocks;
        e1 = matrix_corner(g, ca, "e1_" + p, 0);
        e2 = matrix_corner(g, ca, "e2_" + p, 1);
    }
    FusionResult l5 = fuse_inv_corner_left(g, e1, line4);
    adopt(tr, "4->5", l5);
    L1Element line5 = l5.out;
    tr.lines.push_back(line5);

    // Line 6 repeats line 4; e2 . line 5 = line 6 holds for line 5 with its exit
    // corner in the lower position, and the two exits agree by rotation.
    L1Element line6 = line4;
    line6.label = p + "/6";
    tr.lines.push_back(line6);
    {
        const Corner& exit5 = line5.exit.corner;
        const Corner& ej1 = exit5.factors.back();
        CornerAction ca = CornerAction::from_full(2, line4.j, ej1.target()->action().empty()
                                                              ? std::vector<Mat>{}
                                                              : ej1.target()->action());
        if (ca.blocks.size() != g.size()) ca = CornerAction::trivial(2, line4.j, g.size());
        Corner ej2 = matrix_corner(g, ca, ej1.label, 1);
        if (!same_object(ej2.target(), ej1.target())) throw std::logic_error("line 5 exit corners disagree on M2(j)");
        L1Element line5b = line5;
        line5b.exit.corner = compose_corners(line4.exit.corner, ej2);
        certify(g, tr, "6->5",
                DiagramCertificate{"6->5", line6, line5b, AlgebraHom::identity(line6.b), ej2.hom,
                                   AlgebraHom(line6.x, line5.x, corner_matrix(2, line6.x->dim(), 1), "E2"), e2.hom,
                                   ej2.hom});
        MorphismWord rot = MorphismWord::of({Token::of(ej2.hom), Token::inv(ej1)});
        MorphismWord nf = normalize(rot, {}, &tr.exit_rotation);
        tr.exit_rotation_ok = nf.terms.size() == 1 && nf.terms[0].coeff == 1 && nf.terms[0].tokens.size() == 1 &&
                              nf.terms[0].tokens[0].kind == TokenKind::hom &&
                              nf.terms[0].tokens[0].hom.matrix.is_identity();
    }

    // Line 7: L(x) box_{T-} B over X_t
    L1Element line7;
    line7.label = p + "/7";
    line7.b = line4.b;
    line7.j = line4.j;
    line7.exit = line4.exit;
    line7.m2 = rebased_m2(ms7.algebra(), blocks7);
    line7.x = line7.m2.delta.carrier;
    line7.a = t.x;
    line7.iota = AlgebraHom(line7.j, line7.x, ms7.ideal.matrix * line3.iota.matrix, "iota_" + line7.label);
    {
        // z+-(iota(k) + t-(b)) = S+-(k) + T-(b) (+) b
        const Mat& inv = *zeta1_inv;
        for (std::size_t side = 0; side < 2; ++side) {
            const AlgebraHom& S = side == 0 ? line3.s_minus : line3.s_plus;
            Mat on_k4 = side_by_side(ms7.ideal.matrix * S.matrix, ms7.graph.matrix);
            AlgebraHom z(t.x, line7.x, on_k4 * inv, std::string(side ? "z+_" : "z-_") + p);
            (side ? line7.s_plus : line7.s_minus) = z;
        }
    }
    tr.lines.push_back(line7);
    const AlgebraHom zeta2(line6.x, line7.x, Mat::identity(line7.x->dim()), "zeta2");
    const AlgebraHom zeta1_hom(k4, t.x, zeta1, "zeta1");
    certify(g, tr, "6->7",
            DiagramCertificate{"6->7", line6, line7, AlgebraHom::identity(line6.b), AlgebraHom::identity(line6.j),
                               zeta2, zeta1_hom, std::nullopt});

    // Line 8: x+- = z+- o t+ on the subalgebra generated by j and x-(B)
    Mat xm = line7.s_minus.matrix * t.s_plus.matrix;
    Mat xp = line7.s_plus.matrix * t.s_plus.matrix;
    std::vector<Vec> g8;
    for (std::size_t c = 0; c < line7.j->dim(); ++c) g8.push_back(line7.iota.matrix.col(c));
    for (std::size_t c = 0; c < db; ++c) g8.push_back(xm.col(c));
    Subalgebra x8 = subalgebra_from_span(Ambient::of(line7.x), g8, "L(" + xb->label() + ")[]_x-" + t.a->label());
    std::vector<std::vector<Mat>> blocks8;
    for (std::size_t k = 0; k < g.size(); ++k) {
        std::vector<Mat> bl;
        for (std::size_t c = 0; c < 4; ++c) bl.push_back(restrict_map(x8.span, blocks7[k][c], "line 8 M2-block"));
        blocks8.push_back(std::move(bl));
    }
    L1Element& x = res.x;
    x.label = p;
    x.b = line7.b;
    x.j = line7.j;
    x.exit = line7.exit;
    x.m2 = rebased_m2(x8.algebra, blocks8);
    x.x = x.m2.delta.carrier;
    x.a = t.a;
    x.iota = AlgebraHom(x.j, x.x, coords_in(x8.span, line7.iota.matrix, "iota_8"), "iota_" + p);
    x.s_minus = AlgebraHom(x.a, x.x, coords_in(x8.span, xm, "x-"), "x-_" + p);
    x.s_plus = AlgebraHom(x.a, x.x, coords_in(x8.span, xp, "x+"), "x+_" + p);
    tr.lines.push_back(x);
    certify(g, tr, "8->7",
            DiagramCertificate{"8->7", x, line7, AlgebraHom::identity(x.b), AlgebraHom::identity(x.j),
                               AlgebraHom(x.x, line7.x, x8.embedding, "incl"), AlgebraHom(t.a, t.x, t.s_plus.matrix, "t+"),
                               std::nullopt});

    L1Report vr = validate_l1(g, x);
    if (!vr.ok) throw CertificateFailure("product fails " + vr.condition + ": " + vr.witness);
    try {
        tr.output_class = classify_m2(g, x).cls;
    } catch (const Undetermined&) {
        tr.output_class = Speciality::neither;
    }

    // Closed form against the pipeline, both as (operator on x, b).
    tr.closed_form_ok = true;
    const Mat to_ops = tr.line7_to_operators * x8.embedding;
    for (std::size_t b = 0; b < db && tr.closed_form_ok; ++b) {
        Vec diff = sub(t.s_plus.matrix.col(b), t.s_minus.matrix.col(b));
        auto kd = kspan.coords(diff);
        if (!kd) throw CertificateFailure("t+(b) - t-(b) is not in k");
        for (std::size_t side = 0; side < 2; ++side) {
            const AlgebraHom& S = side == 0 ? line3.s_minus : line3.s_plus;
            Mat op = xb->left_mult(S.matrix.apply(*kd)) + tr.T_minus[b];
            Vec expect = concat(op.flatten(), unit_vec(db, b));
            Vec got = to_ops.apply((side ? x.s_plus : x.s_minus).matrix.col(b));
            if (expect != got) {
                tr.closed_form_ok = false;
                tr.closed_form_witness = std::string(side ? "x+" : "x-") + "(b_" + std::to_string(b) + ") differs";
                break;
            }
        }
    }
    return res;
}

}  // namespace gk
