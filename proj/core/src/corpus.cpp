#include "gk/corpus.hpp"

#include <stdexcept>

namespace gk::corpus {

Vec vec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Mat diag(std::initializer_list<long> xs) {
    Mat m(xs.size(), xs.size());
    std::size_t k = 0;
    for (long x : xs) {
        m(k, k) = x;
        ++k;
    }
    return m;
}

namespace {

AlgebraHom hom(const AlgPtr& s, const AlgPtr& t, const std::vector<Vec>& cols, const std::string& label) {
    return AlgebraHom(s, t, Mat::from_cols(t->dim(), cols), label);
}

Corner identity_exit(const SemigroupG& g, const AlgPtr& j) {
    return iso_corner(g, AlgebraHom(j, j, Mat::identity(j->dim()), "id_" + j->label()));
}

// Blocks [I, w, w, I] at every non-unit element, identity at the unit.
M2Space twisted_m2(const SemigroupG& g, const AlgPtr& x, const Mat& w) {
    CornerAction ca;
    ca.n = 2;
    ca.carrier = x;
    const Mat one = Mat::identity(x->dim());
    for (std::size_t k = 0; k < g.size(); ++k)
        ca.blocks.push_back(k == g.unit() ? std::vector<Mat>{one, one, one, one} : std::vector<Mat>{one, w, w, one});
    return M2Space{ca, std::nullopt};
}

RequestSpec fuse(std::string id, GeneratorKind kind, Flavor f, std::string z, std::string expect) {
    RequestSpec r;
    r.id = std::move(id);
    r.command = "fuse";
    r.kind = kind;
    r.flavor = f;
    r.z = std::move(z);
    r.expect = std::move(expect);
    return r;
}

// A one-dimensional non-free module over D2: E = e1 . D2.
FunctionalModule half_module(const AlgPtr& d2) {
    FunctionalModule m;
    m.label = "E1";
    m.algebra = d2;
    m.dim = 1;
    m.right = {diag({1}), diag({0})};
    Mat th(2, 1);
    th(0, 0) = 1;
    m.theta = {th};
    return m;
}

Instance product_instance() {
    Instance inst;
    inst.g = SemigroupG::trivial();
    const SemigroupG& g = inst.g;
    for (bool zero : {false, true}) {
        inst.add_l1(d2_s(g, zero ? "s0" : "s", zero));
        inst.add_l1(d2_t(g, zero ? "t0" : "t", zero));
    }
    auto product = [&](std::string id, std::string s, std::string t, std::string expect) {
        RequestSpec r;
        r.id = std::move(id);
        r.command = "product";
        r.label = r.id;
        r.s = std::move(s);
        r.t = std::move(t);
        r.unit = std::vector<Vec>{vec({1, 0}), vec({1, 1})};
        r.expect = std::move(expect);
        inst.requests.push_back(r);
    };
    product("d2xd2", "s", "t", "certified");
    product("zero_s", "s0", "t", "certified");
    product("zero_t", "s", "t0", "certified");
    product("swapped", "t", "s", "refused");
    return inst;
}

Instance table_instance() {
    Instance inst;
    inst.g = SemigroupG::cyclic(2);
    const SemigroupG& g = inst.g;

    L1Element zv = d3_element(g, "zv", false);
    L1Element zs = d3_element(g, "zs", true);
    inst.add_l1(zv);
    inst.add_l1(zs);

    // Very special corner on a relabelled copy of D2 (M2(D2) is taken by the
    // special corner's target).
    L1Element zw = d3_element(g, "zw", false);
    AlgPtr d2w = diagonal_algebra(2, "D2w");
    zw.a = d2w;
    zw.s_minus.source = d2w;
    zw.s_plus.source = d2w;
    inst.add_l1(zw);
    inst.add_corner(canonical_matrix_corner(g, d2w, 2, {}, "e_vs"));
    inst.add_corner(special_corner(g, "e_sp"));

    // A generalized corner on D2 and an element ending in its target.
    FunctionalModule e1 = half_module(zv.a);
    inst.add_module(e1);
    const Corner& em = inst.add_corner("e_mod", CornerRecipe{"module", "", "", 1, 0, {}, {}, e1.label, {}});
    L1Element zg;
    {
        zg.label = "zg";
        AlgPtr k = em.target();
        AlgPtr a = base_field(g, "c1");
        zg.b = k;
        zg.j = k;
        zg.a = a;
        zg.x = direct_sum(k, a, "X_zg");
        zg.exit.corner = identity_exit(g, k);
        zg.iota = AlgebraHom(k, zg.x, sum_inclusion(zg.x, k, 0).matrix, "i_zg");
        zg.s_minus = AlgebraHom(a, zg.x, sum_inclusion(zg.x, a, k->dim()).matrix, "s-_zg");
        // e(e1) is an idempotent of K, so a -> (a e(e1), a) is a hom.
        Vec p = concat(em.hom.matrix.col(0), vec({1}));
        zg.s_plus = hom(a, zg.x, {p}, "s+_zg");
        zg.m2 = trivial_m2(g, zg.x);
    }
    if (!validate_l1(g, zg).ok) throw std::logic_error("corpus: zg is not a valid L1 element");
    inst.add_l1(zg);

    AlgPtr c0 = base_field(g, "c0");
    inst.add_corner(iso_corner(g, AlgebraHom(c0, zv.b, Mat::identity(1), "u_c0")));
    AlgPtr d2 = zv.a;
    inst.add_hom(AlgebraHom(d2, d2, Mat::from_cols(2, {vec({0, 1}), vec({1, 0})}), "swap"));
    AlgPtr d2o = diagonal_algebra(2, "D2o");
    inst.add_hom(hom(zv.b, d2o, {vec({1, 0})}, "first"));
    AlgPtr x3 = diagonal_algebra(3, "Xsq");
    AlgPtr c2 = base_field(g, "c2");
    inst.add_sequence(make_split("sq", hom(d2, x3, {vec({1, 0, 0}), vec({0, 1, 0})}, "i_sq"),
                                 hom(c2, x3, {vec({0, 0, 1})}, "s_sq")));
    L1Element kt = d2_t(g, "kt");
    L1Element ks = d2_s(g, "ks");
    inst.add_l1(ks);
    inst.add_l1(kt);

    const std::array<Flavor, 3> flavors = {Flavor::very_special, Flavor::special, Flavor::general};
    for (const TableRow& row : fusion_table()) {
        for (std::size_t f = 0; f < 3; ++f) {
            const Flavor fl = flavors[f];
            // kappa . z is an interface stub and refuses in every setting.
            const bool yes = row.cells[f] == "Y" && row.kind != GeneratorKind::kappa_left;
            std::string id = to_string(row.kind) + "/" + to_string(fl);
            std::string z = fl == Flavor::special ? "zs" : "zv";
            RequestSpec r = fuse(id, row.kind, fl, z, yes ? "certified" : "refused");
            switch (row.kind) {
                case GeneratorKind::hom_left:
                    r.hom = "swap";
                    break;
                case GeneratorKind::hom_right:
                    r.hom = "first";
                    break;
                case GeneratorKind::inv_corner_left:
                    if (fl == Flavor::very_special) {
                        r.z = "zw";
                        r.corner = "e_vs";
                    } else {
                        r.corner = fl == Flavor::special ? "e_sp" : "e_mod";
                    }
                    break;
                case GeneratorKind::inv_corner_right:
                    if (fl == Flavor::general) {
                        r.z = "zg";
                        r.corner = "e_mod";
                    } else {
                        r.corner = "u_c0";
                    }
                    break;
                case GeneratorKind::unitization_split:
                    break;
                case GeneratorKind::kappa_left:
                    r.kappa = "ks";
                    break;
                case GeneratorKind::kappa_right:
                    r.z = "kt";
                    r.kappa = "ks";
                    r.unit = std::vector<Vec>{vec({1, 0}), vec({1, 1})};
                    break;
                case GeneratorKind::split_left:
                    r.seq = "sq";
                    break;
            }
            inst.requests.push_back(r);
        }
    }
    return inst;
}

Instance basics_instance() {
    Instance inst;
    inst.g = SemigroupG::trivial();
    const SemigroupG& g = inst.g;
    for (std::size_t idx : {0u, 7u, 18u}) {
        SplitExactSeq seq = axiom_sequence(g, idx);
        inst.add_sequence(seq);
        inst.add_word("iota.Delta-id/" + seq.label,
                      MorphismWord::of({Token::of(seq.iota), Token::delta(seq)}) - MorphismWord::identity(seq.J()));
        inst.add_word("relation/" + seq.label, MorphismWord::identity(seq.X()) -
                                                   MorphismWord::of({Token::delta(seq), Token::of(seq.iota)}) -
                                                   MorphismWord::of({Token::of(seq.f), Token::of(seq.s)}));
        for (std::string w : {"iota.Delta-id/", "relation/"}) {
            RequestSpec r;
            r.id = w + seq.label;
            r.command = "normalize";
            r.word = r.id;
            r.expect_zero = true;
            inst.requests.push_back(r);
        }
    }

    L1Element z = d3_element(g, "z", false);
    inst.add_l1(z);
    AlgPtr d2 = z.a;
    inst.add_hom(AlgebraHom(d2, d2, Mat::from_cols(2, {vec({0, 1}), vec({1, 0})}), "swap"));
    inst.add_corner(canonical_matrix_corner(g, d2, 2, {}, "e2"));
    AlgPtr c0 = base_field(g, "c0");
    inst.add_corner(iso_corner(g, AlgebraHom(c0, z.b, Mat::identity(1), "u_c0")));

    // u = iota . z for the split J -> D2 -> A, certified by the left fusion.
    AlgPtr jj = base_field(g, "j1"), aa = base_field(g, "a1");
    SplitExactSeq seq = make_split("half", hom(jj, d2, {vec({1, 0})}, "i_half"), hom(aa, d2, {vec({0, 1})}, "s_half"));
    inst.add_sequence(seq);
    FusionResult u = fuse_hom_left(g, seq.iota, z, true);
    u.out.label = "u";
    for (AlgebraHom* h : {&u.out.iota, &u.out.s_minus, &u.out.s_plus}) h->label += "_u";
    u.certificates[0].top = u.out;
    inst.add_diagram("u=iota.z", u.certificates[0]);

    auto fuse_req = [&](std::string id, GeneratorKind k, Flavor f, std::string zl) {
        RequestSpec r = fuse(std::move(id), k, f, std::move(zl), "certified");
        return r;
    };
    RequestSpec r = fuse_req("swap.z", GeneratorKind::hom_left, Flavor::very_special, "z");
    r.hom = "swap";
    inst.requests.push_back(r);
    r = fuse_req("e2^-1.z", GeneratorKind::inv_corner_left, Flavor::very_special, "z");
    r.corner = "e2";
    inst.requests.push_back(r);
    r = fuse_req("z.u^-1", GeneratorKind::inv_corner_right, Flavor::very_special, "z");
    r.corner = "u_c0";
    inst.requests.push_back(r);
    r = fuse_req("DeltaA.z", GeneratorKind::unitization_split, Flavor::very_special, "z");
    inst.requests.push_back(r);
    r = fuse_req("Delta_half.u", GeneratorKind::split_left, Flavor::general, "u");
    r.seq = "half";
    r.witness = "u=iota.z";
    inst.requests.push_back(r);

    RequestSpec nf;
    nf.id = "fact/u=iota.z";
    nf.command = "normalize";
    DiagramReport rep = check_diagram(g, inst.diagram("u=iota.z"));
    if (rep.ok && rep.fact) {
        inst.add_word(nf.id, MorphismWord::of(rep.fact->lhs) - rep.fact->rhs);
        nf.word = nf.id;
        nf.facts = {"u=iota.z"};
        nf.expect_zero = true;
        inst.requests.push_back(nf);
    }
    return inst;
}

Instance invalid_instance() {
    Instance inst;
    inst.g = SemigroupG::trivial();
    inst.add_algebra(base_field(inst.g, "d"));
    inst.add_algebra(Algebra::from_sparse("N1", 1, {SparseVec{}}));
    return inst;
}

}  // namespace

L1Element d2_s(const SemigroupG& g, const std::string& label, bool zero) {
    AlgPtr d = base_field(g, "d"), x = diagonal_algebra(2, "D2"), j = base_field(g, "J");
    L1Element s;
    s.label = label;
    s.a = d;
    s.x = x;
    s.j = j;
    s.b = j;
    s.exit.corner = identity_exit(g, j);
    s.iota = hom(j, x, {vec({1, 0})}, "i_" + label);
    s.s_minus = hom(d, x, {vec({0, 1})}, "s-_" + label);
    s.s_plus = hom(d, x, {zero ? vec({0, 1}) : vec({1, 1})}, "s+_" + label);
    s.m2 = trivial_m2(g, x);
    return s;
}

L1Element d2_t(const SemigroupG& g, const std::string& label, bool zero) {
    AlgPtr d = base_field(g, "d"), k = diagonal_algebra(2, "k"), x = diagonal_algebra(3, "D3"),
           b = base_field(g, "B");
    Corner e = canonical_matrix_corner(g, d, 2, {}, "e");
    Mat psi(4, 2);
    psi(0, 0) = 1;
    psi(3, 1) = 1;
    L1Element t;
    t.label = label;
    t.a = b;
    t.x = x;
    t.j = k;
    t.b = d;
    t.exit.corner = e;
    t.exit.psi = AlgebraHom(k, e.target(), psi, "psi");
    t.iota = hom(k, x, {vec({1, 0, 0}), vec({0, 1, 0})}, "i_" + label);
    t.s_minus = hom(b, x, {vec({0, 0, 1})}, "t-_" + label);
    t.s_plus = hom(b, x, {zero ? vec({0, 0, 1}) : vec({1, 0, 1})}, "t+_" + label);
    t.m2 = trivial_m2(g, x);
    return t;
}

ProductRequest d2_product(const SemigroupG& g, bool zero_s, bool zero_t) {
    ProductRequest req;
    req.label = std::string("x") + (zero_s ? "0" : "") + (zero_t ? "_0" : "");
    req.s = d2_s(g, zero_s ? "s0" : "s", zero_s);
    req.t = d2_t(g, zero_t ? "t0" : "t", zero_t);
    req.phi_data = central_phi(g, req.s);
    req.unit = ApproxUnit{req.t.j, {vec({1, 0}), vec({1, 1})}};
    return req;
}

SplitExactSeq axiom_sequence(const SemigroupG& g, std::size_t index) {
    if (index >= kAxiomSequences) throw std::out_of_range("axiom sequence index");
    const std::string label = "S" + std::to_string(index);
    AlgPtr j, a;
    std::vector<Vec> phi;  // phi(e_k) in J
    if (index < 18) {
        const std::size_t p = index / 6 + 1, q = (index / 2) % 3 + 1;
        const bool twist = index % 2 == 1;
        j = diagonal_algebra(p, "D" + std::to_string(p));
        a = diagonal_algebra(q, "A" + std::to_string(q));
        for (std::size_t k = 0; k < q; ++k) {
            Vec v(p);
            if (twist && k == 0)
                for (auto& c : v) c = 1;
            phi.push_back(v);
        }
    } else {
        j = matrix_algebra(2, base_field(g, "Qi"), {}, "M2(Qi)");
        a = diagonal_algebra(2, "A2");
        if (index == 18) phi = {vec({1, 0, 0, 0}), vec({0, 0, 0, 1})};
        else phi = {vec({1, 0, 0, 1}), vec({0, 0, 0, 0})};
    }
    AlgPtr x = direct_sum(j, a, "X" + std::to_string(index));
    AlgebraHom iota(j, x, sum_inclusion(x, j, 0).matrix, "i_" + label);
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < a->dim(); ++k) cols.push_back(concat(phi[k], unit_vec(a->dim(), k)));
    return make_split(label, iota, hom(a, x, cols, "s_" + label));
}

L1Element d3_element(const SemigroupG& g, const std::string& label, bool special) {
    AlgPtr x = diagonal_algebra(3, "D3"), j = base_field(g, "J"), a = diagonal_algebra(2, "D2");
    L1Element z;
    z.label = label;
    z.a = a;
    z.x = x;
    z.j = j;
    z.b = j;
    z.exit.corner = identity_exit(g, j);
    z.iota = hom(j, x, {vec({1, 0, 0})}, "i_" + label);
    z.s_minus = hom(a, x, {vec({0, 1, 0}), vec({0, 0, 1})}, "s-_" + label);
    z.s_plus = hom(a, x, {vec({1, 1, 0}), vec({0, 0, 1})}, "s+_" + label);
    z.m2 = special ? twisted_m2(g, x, diag({-1, 1, 1})) : trivial_m2(g, x);
    return z;
}

Corner special_corner(const SemigroupG& g, const std::string& label) {
    AlgPtr a = diagonal_algebra(2, "D2");
    CornerAction ca = twisted_m2(g, a, diag({1, -1})).delta;
    return matrix_corner(g, ca, label, 0);
}

L1Element chain_factor(const SemigroupG& g, const std::string& label) {
    AlgPtr d = base_field(g, "d");
    Corner e = canonical_matrix_corner(g, d, 2, {}, "e_" + label);
    AlgPtr j = e.target();
    AlgPtr x = direct_sum(j, d, "X_" + label);
    L1Element z;
    z.label = label;
    z.a = d;
    z.b = d;
    z.j = j;
    z.x = x;
    z.exit.corner = e;
    z.iota = AlgebraHom(j, x, sum_inclusion(x, j, 0).matrix, "i_" + label);
    z.s_minus = hom(d, x, {vec({0, 0, 0, 0, 1})}, "s-_" + label);
    z.s_plus = hom(d, x, {vec({1, 0, 0, 0, 1})}, "s+_" + label);
    z.m2 = trivial_m2(g, x);
    return z;
}

std::vector<std::pair<std::string, Instance>> regression_instances() {
    std::vector<std::pair<std::string, Instance>> out;
    Instance empty;
    out.emplace_back("empty", std::move(empty));
    out.emplace_back("invalid_algebra", invalid_instance());
    out.emplace_back("basics", basics_instance());
    out.emplace_back("d2_product", product_instance());
    out.emplace_back("fusion_table", table_instance());
    return out;
}

}  // namespace gk::corpus
