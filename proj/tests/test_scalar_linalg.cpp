#include "gk/linalg.hpp"

#include <gtest/gtest.h>

using gk::Mat;
using gk::Scalar;
using gk::Vec;

TEST(Scalar, GaussianArithmetic) {
    const Scalar a(mpq_class(1, 2), mpq_class(3)), b(mpq_class(-2), mpq_class(1, 3));
    // (1/2 + 3i)(-2 + i/3) = -1 - 1 + (1/6 - 6) i
    EXPECT_EQ(a * b, Scalar(mpq_class(-2), mpq_class(-35, 6)));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(Scalar::i() * Scalar::i(), Scalar(-1));
    EXPECT_EQ(a * a.inverse(), Scalar(1));
    EXPECT_THROW(Scalar().inverse(), std::domain_error);
}

TEST(Scalar, TextRoundTrip) {
    for (const char* s : {"0", "1", "-3/4", "2/3+1/5 i", "-7 i", "i", "-i", "1-i"}) {
        const Scalar v = Scalar::parse(s);
        EXPECT_EQ(Scalar::parse(v.str()), v) << s;
    }
    EXPECT_EQ(Scalar::parse("6/8").str(), "3/4");
    EXPECT_EQ(Scalar::parse("i"), Scalar::i());
    EXPECT_EQ(Scalar().str(), "0");
}

TEST(Linalg, InverseOfKnownMatrix) {
    // [[2,1],[1,1]]^-1 = [[1,-1],[-1,2]]
    Mat m = Mat::from_rows(2, {Vec{2, 1}, Vec{1, 1}});
    auto inv = gk::inverse(m);
    ASSERT_TRUE(inv);
    EXPECT_EQ(*inv, Mat::from_rows(2, {Vec{1, -1}, Vec{-1, 2}}));
    EXPECT_FALSE(gk::inverse(Mat::from_rows(2, {Vec{1, 2}, Vec{2, 4}})));
}

TEST(Linalg, RankAndKernel) {
    Mat m = Mat::from_rows(3, {Vec{1, 2, 3}, Vec{2, 4, 6}, Vec{0, 1, 1}});
    EXPECT_EQ(gk::rank(m), 2u);
    auto ker = gk::kernel(m);
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_TRUE(gk::is_zero(m.apply(ker[0])));
    EXPECT_FALSE(gk::is_zero(ker[0]));
}

TEST(Linalg, KroneckerMatchesDefinition) {
    Mat a = Mat::from_rows(2, {Vec{1, 2}, Vec{3, 4}});
    Mat b = Mat::from_rows(2, {Vec{0, 1}, Vec{1, 0}});
    Mat k = gk::kron(a, b);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(k(i, j), a(i / 2, j / 2) * b(i % 2, j % 2));
}

TEST(Linalg, SubspaceCoordinates) {
    gk::Subspace s(3, {Vec{1, 1, 0}, Vec{0, 1, 1}});
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_TRUE(s.contains(Vec{1, 2, 1}));
    EXPECT_FALSE(s.contains(Vec{1, 0, 0}));
    auto c = s.coords(Vec{2, 3, 1});
    ASSERT_TRUE(c);
    EXPECT_EQ(s.combine(*c), (Vec{2, 3, 1}));
}
