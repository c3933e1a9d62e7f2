#include "gk/equivariance.hpp"

#include <gtest/gtest.h>

using namespace gk;

namespace {
Mat swap2() { return Mat::from_cols(2, {Vec{0, 1}, Vec{1, 0}}); }
}  // namespace

TEST(Equivariance, SwapIsAnAction) {
    const SemigroupG g = SemigroupG::cyclic(2);
    AlgPtr d2 = diagonal_algebra(2, "D2");
    EXPECT_TRUE(check_action(g, *d2, {Mat::identity(2), swap2()}).ok);
}

TEST(Equivariance, NonMultiplicativeMapIsRejected) {
    const SemigroupG g = SemigroupG::cyclic(2);
    AlgPtr d2 = diagonal_algebra(2, "D2");
    Mat bad = Mat::from_rows(2, {Vec{1, 1}, Vec{0, 1}});
    EXPECT_FALSE(check_action(g, *d2, {Mat::identity(2), bad}).ok);
}

TEST(Equivariance, UnitizationDimensionAndUnit) {
    const SemigroupG g = SemigroupG::klein4();
    AlgPtr d2 = diagonal_algebra(2, "D2");
    AdjoinedUnit u = adjoin_unit(g, d2);
    // A group has a single idempotent, so A+ = A (+) Q(i).
    EXPECT_EQ(u.plus->dim(), 3u);
    ASSERT_TRUE(u.plus->unit());
    EXPECT_EQ(*u.plus->unit(), (Vec{0, 0, 1}));
}

TEST(Equivariance, ProductFormIsVerySpecial) {
    const SemigroupG g = SemigroupG::cyclic(2);
    AlgPtr d2 = diagonal_algebra(2, "D2");
    Mat u = Mat::from_rows(2, {Vec{1, 0}, Vec{0, -1}});
    std::vector<Mat> gamma = {Mat::identity(4), inner_matrix_action(2, u, u)};
    CornerAction ca = CornerAction::product(2, d2, gamma, {Mat::identity(2), Mat::identity(2)});
    SpecialityResult r = classify_speciality(g, ca);
    EXPECT_EQ(r.cls, Speciality::very_special);
}

TEST(Equivariance, TwistedOffDiagonalIsSpecialNotVerySpecial) {
    // delta^12 = delta^21 = diag(1,-1) on D2: inner by diag(1, (1,-1)).
    const SemigroupG g = SemigroupG::cyclic(2);
    AlgPtr d2 = diagonal_algebra(2, "D2");
    const Mat one = Mat::identity(2), w = Mat::from_rows(2, {Vec{1, 0}, Vec{0, -1}});
    CornerAction ca;
    ca.n = 2;
    ca.carrier = d2;
    ca.blocks = {{one, one, one, one}, {one, w, w, one}};
    SpecialityResult r = classify_speciality(g, ca);
    EXPECT_EQ(r.cls, Speciality::special);
    ASSERT_TRUE(r.extension);
    EXPECT_TRUE(r.extension->report.ok);
}
