#include "gk/corpus.hpp"

#include <gtest/gtest.h>

using namespace gk;
using corpus::vec;

TEST(Words, HomCompositionFuses) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr d2 = diagonal_algebra(2, "D2");
    AlgebraHom swap(d2, d2, Mat::from_cols(2, {vec({0, 1}), vec({1, 0})}), "swap");
    MorphismWord w = MorphismWord::of({Token::of(swap), Token::of(swap)}) - MorphismWord::identity(d2);
    EXPECT_TRUE(normalize(w).is_zero());
    MorphismWord once = MorphismWord::of({Token::of(swap)}) - MorphismWord::identity(d2);
    EXPECT_FALSE(normalize(once).is_zero());
}

TEST(Words, CornerCancelsItsInverse) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr d = base_field(g, "d");
    Corner e = canonical_matrix_corner(g, d, 2, {}, "e");
    MorphismWord w = MorphismWord::of({Token::of(e.hom), Token::inv(e)}) - MorphismWord::identity(d);
    EXPECT_TRUE(normalize(w).is_zero());
}

TEST(Words, CompositionTypeErrors) {
    const SemigroupG g = SemigroupG::trivial();
    AlgPtr d2 = diagonal_algebra(2, "D2"), d3 = diagonal_algebra(3, "D3");
    AlgebraHom a(d2, d3, Mat(3, 2), "zero23");
    EXPECT_THROW(MorphismWord::of({Token::of(a), Token::of(a)}).check(), std::invalid_argument);
}

TEST(Words, SplitRelations) {
    const SemigroupG g = SemigroupG::trivial();
    SplitExactSeq s = corpus::axiom_sequence(g, 5);
    // s . Delta = 0 and Delta . iota + f . s = id.
    EXPECT_TRUE(normalize(MorphismWord::of({Token::of(s.s), Token::delta(s)})).is_zero());
    EXPECT_TRUE(vanishes_by_split(MorphismWord::identity(s.X()) -
                                      MorphismWord::of({Token::delta(s), Token::of(s.iota)}) -
                                      MorphismWord::of({Token::of(s.f), Token::of(s.s)}),
                                  s));
}

TEST(Words, LevelOneWordShape) {
    const SemigroupG g = SemigroupG::cyclic(2);
    // Very special: s+ . Delta . e^-1 (3 tokens); special keeps f2 . f1^-1.
    MorphismWord v = level_one_word(g, corpus::d3_element(g, "v", false));
    MorphismWord s = level_one_word(g, corpus::d3_element(g, "s", true));
    ASSERT_EQ(v.terms.size(), 1u);
    ASSERT_EQ(s.terms.size(), 1u);
    EXPECT_EQ(v.terms[0].tokens.size(), 3u);
    EXPECT_EQ(s.terms[0].tokens.size(), 5u);
    EXPECT_EQ(s.terms[0].tokens[2].kind, TokenKind::inv_corner);
}

TEST(Words, CertifiedFactRewrites) {
    const SemigroupG g = SemigroupG::trivial();
    L1Element z = corpus::d3_element(g, "z", false);
    AlgPtr d2 = z.a;
    AlgebraHom swap(d2, d2, Mat::from_cols(2, {vec({0, 1}), vec({1, 0})}), "swap");
    FusionResult r = fuse_hom_left(g, swap, z);
    ASSERT_EQ(r.reports.size(), 1u);
    ASSERT_TRUE(r.reports[0].fact);
    FactStore facts;
    facts.add(*r.reports[0].fact);
    NormalizeOptions opts;
    opts.facts = &facts;
    // swap . z equals the fused element as words once the fact is available.
    MorphismWord w = MorphismWord::of({Token::of(swap)}).then(level_one_word(g, z)) - level_one_word(g, r.out);
    EXPECT_FALSE(normalize(w).is_zero());
    EXPECT_TRUE(normalize(w, opts).is_zero());
}
