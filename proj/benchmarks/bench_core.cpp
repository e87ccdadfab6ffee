#include <benchmark/benchmark.h>

#include <cmath>

#include "popmatch/analysis.hpp"
#include "popmatch/matching.hpp"
#include "popmatch/profile.hpp"
#include "popmatch/random_graphs.hpp"
#include "popmatch/topchoice.hpp"

namespace {

using namespace popmatch;

void BM_GenerateIncomplete(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto m = static_cast<std::uint32_t>(3 * n / 2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto profile = generate_incomplete(n, m, 4, seed++);
    benchmark::DoNotOptimize(profile.entries.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GenerateIncomplete)->Arg(1000)->Arg(100000);

void BM_Decompose(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto profile = generate_incomplete(n, 3 * n / 2, 4, 7);
  for (auto _ : state) {
    auto fs = decompose(profile);
    benchmark::DoNotOptimize(fs.a2.size());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Decompose)->Arg(1000)->Arg(100000);

void BM_ExistenceCheck(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto profile = generate_incomplete(n, 3 * n / 2, 5, seed++);
    benchmark::DoNotOptimize(exists_popular_fast(profile));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ExistenceCheck)->Arg(2000)->Arg(20000);

void BM_APerfectMatching(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto profile = generate_incomplete(n, 3 * n / 2, 5, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exists_a_perfect_matching(profile).has_value());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_APerfectMatching)->Arg(2000)->Arg(20000);

void BM_SampleGprimeCensus(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  const auto h = static_cast<std::uint32_t>(std::floor(std::exp(-1.0) * m));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto graph = sample_Gprime(m, h, m / 2, m / 2, seed++);
    benchmark::DoNotOptimize(has_complex_component(graph));
  }
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_SampleGprimeCensus)->Arg(10000)->Arg(100000);

void BM_BruteForceExistence(benchmark::State& state) {
  const auto profile = generate_incomplete(4, 5, 3, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exists_popular_bruteforce(profile).has_value());
  }
}
BENCHMARK(BM_BruteForceExistence);

void BM_AlphaK(benchmark::State& state) {
  std::uint32_t k = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha_k(4 + (k++ % 97)));
  }
}
BENCHMARK(BM_AlphaK);

void BM_BranchingTrialBlock(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto outcome = branching_simulate(2.0, 2.0, 100, 10000, seed++);
    benchmark::DoNotOptimize(outcome.survival_frequency);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_BranchingTrialBlock);

}  // namespace

BENCHMARK_MAIN();
