#include <benchmark/benchmark.h>

#include "discdep/aggregate.h"
#include "discdep/decode.h"
#include "discdep/rng.h"
#include "discdep/select.h"

namespace {

using namespace discdep;

EduMatrix random_matrix(int n, Rng& rng) {
  EduMatrix m(n, kImpossible);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.at(i, j) = rng.uniform01();
  return m;
}

AttentionRecord random_record(int n_edus, int tokens_per_edu, Rng& rng) {
  const int k = n_edus * tokens_per_edu + 2;
  std::vector<float> v(static_cast<std::size_t>(12) * 16 * k * k);
  for (float& x : v) x = static_cast<float>(rng.uniform01());
  std::vector<TokenSpan> spans;
  for (int e = 0; e < n_edus; ++e)
    spans.push_back({1 + e * tokens_per_edu, 1 + (e + 1) * tokens_per_edu});
  return AttentionRecord("bench", 12, 16, k, std::move(v), std::move(spans));
}

void BM_Eisner(benchmark::State& state) {
  Rng rng(1);
  const auto m = random_matrix(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eisner_decode(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eisner)->RangeMultiplier(2)->Range(4, 128)->Complexity(benchmark::oNCubed);

void BM_BruteForce(benchmark::State& state) {
  Rng rng(2);
  const auto m = random_matrix(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_decode(m));
}
BENCHMARK(BM_BruteForce)->DenseRange(4, 8, 2);

void BM_AggregateHead(benchmark::State& state) {
  Rng rng(3);
  const auto rec = random_record(static_cast<int>(state.range(0)), 12, rng);
  for (auto _ : state) benchmark::DoNotOptimize(aggregate_head(rec, {5, 3}));
}
BENCHMARK(BM_AggregateHead)->Arg(11)->Arg(37);

void BM_AggregateLayer(benchmark::State& state) {
  Rng rng(4);
  const auto rec = random_record(static_cast<int>(state.range(0)), 12, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(aggregate_head(rec, HeadId::layer_average(5)));
}
BENCHMARK(BM_AggregateLayer)->Arg(11)->Arg(37);

// All 192 candidates of one 11-EDU dialogue: aggregate, constrain, decode.
void BM_ScoreDialogue(benchmark::State& state) {
  Rng rng(5);
  std::vector<Instance> corpus(1);
  corpus[0].record = random_record(11, 12, rng);
  corpus[0].dialogue.id = "bench";
  for (int e = 0; e < 11; ++e) corpus[0].dialogue.edus.push_back({e, "spk1", "x"});
  for (auto _ : state) {
    ScoredCorpus scored(corpus, Granularity::kHead, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(scored.das_table());
  }
}
BENCHMARK(BM_ScoreDialogue)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
