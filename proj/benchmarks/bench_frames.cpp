#include <benchmark/benchmark.h>

#include "collimator/ecw.hpp"
#include "collimator/gsw.hpp"
#include "collimator/random.hpp"

using namespace collimator;

static void BM_AcwFrame(benchmark::State& state) {
  Rng rng(1);
  const AcwConfigs cfg = default_acw_configs();
  const Pose target{rng.unit_vector() * 50.0, rng.rotation()};
  const Pose tool{target.position + rng.unit_vector() * 5.0, rng.rotation()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(acw_frame(tool, target, cfg));
  }
}
BENCHMARK(BM_AcwFrame);

static void BM_GswFrame(benchmark::State& state) {
  Rng rng(2);
  const Pose target{rng.unit_vector() * 50.0, rng.rotation()};
  const Pose tool{target.position + rng.unit_vector() * 5.0, rng.rotation()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gsw_frame(tool, target));
  }
}
BENCHMARK(BM_GswFrame);

static void BM_ComputeError(benchmark::State& state) {
  Rng rng(3);
  const Pose a{rng.unit_vector(), rng.rotation()};
  const Pose b{rng.unit_vector(), rng.rotation()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_error(a, b));
  }
}
BENCHMARK(BM_ComputeError);
