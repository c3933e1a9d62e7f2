#include "gk/corpus.hpp"

#include <gtest/gtest.h>

using namespace gk;
using corpus::vec;

TEST(Sequences, SplitProjectionOracle) {
    const SemigroupG g = SemigroupG::trivial();
    for (std::size_t idx = 0; idx < corpus::kAxiomSequences; ++idx) {
        SplitExactSeq s = corpus::axiom_sequence(g, idx);
        EXPECT_TRUE(validate_split(g, s).ok) << s.label;
        // f . iota = 0 and f . s = id by matrix arithmetic.
        EXPECT_TRUE((s.f.matrix * s.iota.matrix).is_zero()) << s.label;
        EXPECT_TRUE((s.f.matrix * s.s.matrix).is_identity()) << s.label;
    }
}

TEST(Sequences, NonIdealIsRejected) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr m2 = matrix_algebra(2, base_field(g, "Qi"));
    AlgPtr k = base_field(g, "k");
    // k -> E_00 is a subalgebra but not an ideal of M2.
    AlgebraHom iota(k, m2, Mat::from_cols(4, {vec({1, 0, 0, 0})}), "e00");
    EXPECT_TRUE(ideal_witness(iota).has_value());
}

TEST(Sequences, LevelOneElementsValidate) {
    const SemigroupG z2 = SemigroupG::cyclic(2), triv = SemigroupG::trivial();
    EXPECT_TRUE(validate_l1(triv, corpus::d2_s(triv)).ok);
    EXPECT_TRUE(validate_l1(triv, corpus::d2_t(triv)).ok);
    EXPECT_TRUE(validate_l1(z2, corpus::d3_element(z2, "z", true)).ok);
    EXPECT_TRUE(validate_l1(triv, corpus::chain_factor(triv, "c")).ok);
}

TEST(Sequences, BrokenSPlusIsRejected) {
    const SemigroupG g = SemigroupG::trivial();
    L1Element z = corpus::d2_s(g);
    // s+ = 2 s- is not multiplicative.
    z.s_plus.matrix = Mat::from_cols(2, {vec({0, 2})});
    EXPECT_FALSE(validate_l1(g, z).ok);
}

TEST(Sequences, SpecialityOfD3Elements) {
    const SemigroupG g = SemigroupG::cyclic(2);
    EXPECT_EQ(classify_m2(g, corpus::d3_element(g, "v", false)).cls, Speciality::very_special);
    EXPECT_EQ(classify_m2(g, corpus::d3_element(g, "s", true)).cls, Speciality::special);
}

TEST(Sequences, ZeroElement) {
    const SemigroupG g = SemigroupG::trivial();
    EXPECT_TRUE(is_zero_element(corpus::d2_s(g, "s0", true)));
    EXPECT_FALSE(is_zero_element(corpus::d2_s(g)));
}
