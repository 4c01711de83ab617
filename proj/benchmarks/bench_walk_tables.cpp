#include <benchmark/benchmark.h>

#include "cogrowth/finite_graph.hpp"
#include "cogrowth/growth.hpp"
#include "cogrowth/profile.hpp"
#include "cogrowth/tree_walks.hpp"

using namespace cogrowth;

static void BM_WalkTableExact(benchmark::State& state) {
  const int t_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_walk_table(RegularTree(3), t_max, NumericMode::exact));
  }
}
BENCHMARK(BM_WalkTableExact)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_WalkTableLog(benchmark::State& state) {
  const int t_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_walk_table(RegularTree(3), t_max, NumericMode::log));
  }
}
BENCHMARK(BM_WalkTableLog)->Arg(400)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_BSequenceLog(benchmark::State& state) {
  const int t_max = static_cast<int>(state.range(0));
  const auto profile = profile_geometric(3.0, Parity::both, 6, t_max, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(b_sequence(profile, RegularTree(6), t_max, NumericMode::log));
  }
}
BENCHMARK(BM_BSequenceLog)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_BSequenceExact(benchmark::State& state) {
  const auto profile = profile_full_tree(3, 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(b_sequence(profile, RegularTree(3), 1000, NumericMode::exact));
  }
}
BENCHMARK(BM_BSequenceExact)->Unit(benchmark::kMillisecond);

static void BM_CoveringPetersen(benchmark::State& state) {
  const auto g = petersen_graph();
  for (auto _ : state) {
    benchmark::DoNotOptimize(covering_identity_check(g, 0, 1, 30));
  }
}
BENCHMARK(BM_CoveringPetersen)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
