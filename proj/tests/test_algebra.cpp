#include "gk/algebra.hpp"

#include <gtest/gtest.h>

using namespace gk;

TEST(Algebra, MatrixAlgebraMultipliesLikeMatrices) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr m2 = matrix_algebra(2, base_field(g));
    // Basis index r*2 + c is E_rc; E_01 E_10 = E_00 and E_10 E_01 = E_11.
    EXPECT_EQ(m2->mul(m2->basis(1), m2->basis(2)), m2->basis(0));
    EXPECT_EQ(m2->mul(m2->basis(2), m2->basis(1)), m2->basis(3));
    EXPECT_TRUE(is_zero(m2->mul(m2->basis(1), m2->basis(1))));
    EXPECT_TRUE(check_algebra(*m2).ok());
    ASSERT_TRUE(m2->unit());
    EXPECT_EQ(*m2->unit(), (Vec{1, 0, 0, 1}));
}

TEST(Algebra, NonAssociativeTableIsRejected) {
    // b0 b0 = b1, b1 b0 = b0, everything else zero: (b0 b0) b0 = b0 but b0 (b0 b0) = 0.
    AlgPtr a = Algebra::from_sparse("bad", 2, {{{1, Scalar(1)}}, {}, {{0, Scalar(1)}}, {}});
    AlgebraReport r = check_algebra(*a);
    EXPECT_FALSE(r.associative);
    EXPECT_NE(r.witness.find("associativity"), std::string::npos);
}

TEST(Algebra, ZeroProductIsNotQuadratik) {
    AlgPtr a = Algebra::from_sparse("N1", 1, {SparseVec{}});
    AlgebraReport r = check_algebra(*a);
    EXPECT_TRUE(r.associative);
    EXPECT_FALSE(r.quadratik);
}

TEST(Algebra, FindUnitOfDirectSum) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr s = direct_sum(matrix_algebra(2, base_field(g)), diagonal_algebra(2));
    auto u = find_unit(*s);
    ASSERT_TRUE(u);
    EXPECT_EQ(*u, (Vec{1, 0, 0, 1, 1, 1}));
}

TEST(Algebra, HomChecks) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr d2 = diagonal_algebra(2, "D2");
    AlgebraHom swap(d2, d2, Mat::from_cols(2, {Vec{0, 1}, Vec{1, 0}}), "swap");
    EXPECT_TRUE(check_hom(g, swap).ok());
    // a -> (a1 + a2, 0) is linear but not multiplicative.
    AlgebraHom sum(d2, d2, Mat::from_rows(2, {Vec{1, 1}, Vec{0, 0}}), "sum");
    EXPECT_FALSE(check_hom(g, sum).ok());
}

TEST(Algebra, InnerActionConjugates) {
    // ad(u) with u = [[0,1],[1,0]] sends E_00 to E_11.
    Mat u = Mat::from_rows(2, {Vec{0, 1}, Vec{1, 0}});
    Mat ad = inner_matrix_action(2, u, u);
    EXPECT_EQ(ad.apply(unit_vec(4, 0)), unit_vec(4, 3));
    EXPECT_EQ(ad.apply(unit_vec(4, 1)), unit_vec(4, 2));
}
