#include "gk/corpus.hpp"

#include <gtest/gtest.h>

using namespace gk;
using corpus::vec;

TEST(Fusion, HomRightMovesThroughIsoExit) {
    const SemigroupG g = SemigroupG::cyclic(2);
    L1Element z = corpus::d3_element(g, "z", false);
    AlgPtr d2 = diagonal_algebra(2, "D2o");
    AlgebraHom first(z.b, d2, Mat::from_cols(2, {vec({1, 0})}), "first");
    FusionResult r = fuse_hom_right(g, z, first);
    EXPECT_TRUE(validate_l1(g, r.out).ok);
    EXPECT_EQ(r.out.b->label(), "D2o");
    ASSERT_TRUE(r.out.exit.psi);
    // psi = first . id_J
    EXPECT_EQ(r.out.exit.psi->matrix, first.matrix);
}

TEST(Fusion, InverseCornerAmplifiesSplits) {
    const SemigroupG g = SemigroupG::trivial();
    L1Element z = corpus::d2_s(g);
    Corner e = canonical_matrix_corner(g, z.a, 3, {}, "e3");
    FusionResult r = fuse_inv_corner_left(g, e, z);
    EXPECT_TRUE(validate_l1(g, r.out).ok);
    // u+- = s+- (x) id_{M3} on M3(X).
    EXPECT_EQ(r.out.s_plus.matrix, kron(Mat::identity(9), z.s_plus.matrix));
    EXPECT_EQ(r.out.s_minus.matrix, kron(Mat::identity(9), z.s_minus.matrix));
    EXPECT_EQ(r.out.x->dim(), 9 * z.x->dim());
}

TEST(Fusion, ApproximateUnitChecks) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr d2 = diagonal_algebra(2, "D2");
    EXPECT_TRUE(check_approx_unit(ApproxUnit{d2, {vec({1, 0}), vec({1, 1})}}).ok);
    // Not increasing.
    EXPECT_FALSE(check_approx_unit(ApproxUnit{d2, {vec({1, 0}), vec({0, 1})}}).ok);
    // Does not end in a unit.
    EXPECT_FALSE(check_approx_unit(ApproxUnit{d2, {vec({1, 0})}}).ok);
}

TEST(Fusion, DispatchRefusalsQuoteTheTable) {
    const SemigroupG g = SemigroupG::cyclic(2);
    L1Element z = corpus::d3_element(g, "z", false);
    Generator gen;
    gen.kind = GeneratorKind::unitization_split;
    DispatchResult r = dispatch(g, gen, z, Flavor::general);
    EXPECT_TRUE(r.refused);
    EXPECT_EQ(r.condition, "N: no formula known in this setting");
    gen.kind = GeneratorKind::kappa_right;
    r = dispatch(g, gen, z, Flavor::special);
    EXPECT_EQ(r.condition, "NY: not yet available in this setting");
    gen.kind = GeneratorKind::split_left;
    r = dispatch(g, gen, z, Flavor::general);
    EXPECT_EQ(r.condition, "<=> exists u in L1: i . u = z");
    gen.kind = GeneratorKind::kappa_left;
    r = dispatch(g, gen, z, Flavor::very_special);
    EXPECT_EQ(r.condition, "interface stub: formulas in external reference");
}

TEST(Fusion, ProductRefusesNonComposable) {
    const SemigroupG g = SemigroupG::trivial();
    ProductRequest req = corpus::d2_product(g);
    std::swap(req.s, req.t);
    EXPECT_THROW(product_khom_ktheory(g, req), Refusal);
}

TEST(Fusion, ProductOutputObjects) {
    const SemigroupG g = SemigroupG::trivial();
    ProductResult r = product_khom_ktheory(g, corpus::d2_product(g));
    // x: B -> J with J_x = M2(J).
    EXPECT_EQ(r.x.a->label(), "B");
    EXPECT_EQ(r.x.b->label(), "J");
    EXPECT_EQ(r.x.j->dim(), 4u);
    EXPECT_TRUE(r.trace.ok());
    EXPECT_TRUE(r.trace.exit_rotation_ok);
}
