#include "gk/modules.hpp"

#include <gtest/gtest.h>

using namespace gk;

TEST(Modules, RegularModuleOverD2) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr d2 = diagonal_algebra(2, "D2");
    FunctionalModule m = FunctionalModule::regular(d2);
    EXPECT_TRUE(check_module(g, m).ok);
    // K(A_A) = A and L(A_A) = A for unital commutative A: both are the diagonal.
    OperatorAlgebra k = compute_compacts(g, m);
    OperatorAlgebra l = compute_adjointables(g, m);
    EXPECT_EQ(k.algebra()->dim(), 2u);
    EXPECT_EQ(l.algebra()->dim(), 2u);
    EXPECT_TRUE(l.coords_of(Mat::identity(2)).has_value());
    EXPECT_FALSE(l.coords_of(Mat::from_cols(2, {Vec{0, 1}, Vec{1, 0}})).has_value());
}

TEST(Modules, FreeModuleCompactsAreMatrices) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr k = base_field(g, "k");
    FunctionalModule m = FunctionalModule::free(k, 3);
    EXPECT_TRUE(check_module(g, m).ok);
    // K(k^3) = M_3(k).
    EXPECT_EQ(compute_compacts(g, m).algebra()->dim(), 9u);
}

TEST(Modules, CanonicalCornerIsVerySpecial) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr d = base_field(g, "d");
    Corner e = canonical_matrix_corner(g, d, 3, {}, "e", 1);
    EXPECT_EQ(e.kind, CornerKind::canonical_matrix);
    EXPECT_EQ(e.cls, Speciality::very_special);
    EXPECT_EQ(e.target()->dim(), 9u);
    // b -> b e_11 lands at basis index 1*3 + 1.
    EXPECT_EQ(e.hom.matrix.col(0), unit_vec(9, 4));
    EXPECT_TRUE(check_corner(g, e).ok);
}

TEST(Modules, CornerEmbeddingOfHalfModule) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr d2 = diagonal_algebra(2, "D2");
    FunctionalModule e1;
    e1.label = "E1";
    e1.algebra = d2;
    e1.dim = 1;
    e1.right = {Mat::identity(1), Mat(1, 1)};
    Mat th(2, 1);
    th(0, 0) = 1;
    e1.theta = {th};
    ASSERT_TRUE(check_module(g, e1).ok);
    Corner c = corner_embedding(g, e1, "e_mod");
    EXPECT_EQ(c.kind, CornerKind::module);
    EXPECT_TRUE(check_corner(g, c).ok);
    EXPECT_TRUE(check_hom(g, c.hom).ok());
}
