#include <benchmark/benchmark.h>

#include "treecount/count.hpp"
#include "treecount/generators.hpp"
#include "treecount/matching.hpp"
#include "treecount/pipeline.hpp"
#include "treecount/random_embed.hpp"
#include "treecount/tree.hpp"

using namespace treecount;

namespace {

Digraph dense_host(int n) {
  CounterRng rng(1, static_cast<std::uint64_t>(n));
  return random_dense_digraph(n, (3 * n + 4) / 5, rng);
}

void bm_sinkhorn(benchmark::State& state) {
  const Digraph g = dense_host(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_entropy_matching(g).matching.weights().data());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_sinkhorn)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void bm_sample_tree(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const PerfectFractionalMatching x = max_entropy_matching(dense_host(200)).matching;
  CounterRng rng(2, 0);
  const RootedOrientedTree t = random_tree(m, 4, rng);
  std::uint64_t s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_tree(x, t, -1, s++).log_prob);
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(bm_sample_tree)->Arg(8)->Arg(32)->Arg(128);

void bm_sample_batch(benchmark::State& state) {
  const PerfectFractionalMatching x = max_entropy_matching(dense_host(100)).matching;
  CounterRng rng(3, 0);
  const RootedOrientedTree t = random_tree(16, 4, rng);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_batch(x, t, -1, 20000, 7, workers).size());
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(bm_sample_batch)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void bm_brute_count(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Digraph g = dense_host(n);
  CounterRng rng(4, 0);
  const RootedOrientedTree t = random_tree(6, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(count_copies_brute(g, t).nodes);
}
BENCHMARK(bm_brute_count)->Arg(8)->Arg(12)->Arg(16);

void bm_quarter_decomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng rng(5, 0);
  const RootedOrientedTree t = random_tree(n, 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(quarter_decomposition(t, n).pieces.size());
  state.SetComplexityN(n);
}
BENCHMARK(bm_quarter_decomposition)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void bm_automorphisms(benchmark::State& state) {
  CounterRng rng(6, 0);
  const RootedOrientedTree t = random_tree(static_cast<int>(state.range(0)), 6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(automorphism_count(t, false));
}
BENCHMARK(bm_automorphisms)->Arg(100)->Arg(10000);

void bm_pipeline(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng rng(7, 0);
  const Digraph g = random_dense_digraph(n, (3 * n + 4) / 5, rng);
  const RootedOrientedTree t = random_tree(n, 4, rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    PipelineOptions opt;
    opt.seed = seed++;
    benchmark::DoNotOptimize(run_pipeline(g, t, opt).success);
  }
}
BENCHMARK(bm_pipeline)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
