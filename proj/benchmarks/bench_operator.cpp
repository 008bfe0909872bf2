#include <benchmark/benchmark.h>

#include "collimator/operator.hpp"

using namespace collimator;

static void BM_OperatorTrial(benchmark::State& state) {
  const Widget widget = state.range(0) == 0 ? Widget::ACW : Widget::GSW;
  SimulatedOperator op{OperatorParams{}};
  Rng rng(9);
  const Pose target{rng.unit_vector() * 100.0, rng.rotation()};
  const Pose start{rng.unit_vector() * 100.0, rng.rotation()};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(op.run_trial(widget, start, target, ++seed));
  }
  state.SetLabel(widget == Widget::ACW ? "ACW" : "GSW");
}
BENCHMARK(BM_OperatorTrial)->Arg(0)->Arg(1);
