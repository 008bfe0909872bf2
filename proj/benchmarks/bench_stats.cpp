#include <benchmark/benchmark.h>

#include <vector>

#include "collimator/random.hpp"
#include "collimator/stats.hpp"

using namespace collimator;

namespace {

std::vector<double> sample(std::uint64_t seed, std::size_t n, double shift) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal(shift);
  return x;
}

}  // namespace

static void BM_MannWhitneyExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sample(1, n, 0.0);
  const auto b = sample(2, n, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::mann_whitney_u(a, b, stats::Alternative::Less));
  }
}
BENCHMARK(BM_MannWhitneyExact)->Arg(5)->Arg(10)->Arg(20);

static void BM_MannWhitneyNormal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sample(3, n, 0.0);
  const auto b = sample(4, n, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::mann_whitney_u(a, b, stats::Alternative::Less));
  }
}
BENCHMARK(BM_MannWhitneyNormal)->Arg(900)->Arg(10000);

static void BM_Describe(benchmark::State& state) {
  const auto x = sample(5, 900, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::describe(x));
  }
}
BENCHMARK(BM_Describe);
