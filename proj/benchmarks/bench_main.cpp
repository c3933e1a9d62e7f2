#include "gk/corpus.hpp"
#include "gk/product.hpp"

#include <benchmark/benchmark.h>

using namespace gk;

static void BM_Product(benchmark::State& state) {
    const SemigroupG g = SemigroupG::trivial();
    const ProductRequest req = corpus::d2_product(g);
    for (auto _ : state) benchmark::DoNotOptimize(product_khom_ktheory(g, req));
}
BENCHMARK(BM_Product)->Unit(benchmark::kMillisecond);

static void BM_NormalizeRelation(benchmark::State& state) {
    const SemigroupG g = SemigroupG::trivial();
    const SplitExactSeq s = corpus::axiom_sequence(g, static_cast<std::size_t>(state.range(0)));
    const MorphismWord w = MorphismWord::identity(s.X()) - MorphismWord::of({Token::delta(s), Token::of(s.iota)}) -
                           MorphismWord::of({Token::of(s.f), Token::of(s.s)});
    for (auto _ : state) benchmark::DoNotOptimize(normalize(w));
}
BENCHMARK(BM_NormalizeRelation)->Arg(0)->Arg(17)->Arg(19);

static void BM_ChainNormalForm(benchmark::State& state) {
    const SemigroupG g = SemigroupG::trivial();
    const std::vector<L1Element> chain = {corpus::chain_factor(g, "z1"), corpus::chain_factor(g, "z2")};
    for (auto _ : state) benchmark::DoNotOptimize(normal_form_chain(g, chain));
}
BENCHMARK(BM_ChainNormalForm)->Unit(benchmark::kMillisecond);

static void BM_CheckAlgebra(benchmark::State& state) {
    const SemigroupG g = SemigroupG::trivial();
    const AlgPtr a = matrix_algebra(static_cast<std::size_t>(state.range(0)), base_field(g));
    for (auto _ : state) benchmark::DoNotOptimize(check_algebra(*a));
}
BENCHMARK(BM_CheckAlgebra)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK_MAIN();
