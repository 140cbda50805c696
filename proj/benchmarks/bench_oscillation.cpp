#include <benchmark/benchmark.h>

#include "vmolab/fields.hpp"
#include "vmolab/oscillation.hpp"

namespace {

using namespace vmolab;

void BM_ExampleField(benchmark::State& state) {
  const fields::ExampleParams params;
  for (auto _ : state) benchmark::DoNotOptimize(fields::example_field(params, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ExampleField)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BestDirection(benchmark::State& state) {
  const fields::ExampleParams params;
  const auto field = fields::example_field(params, 256);
  const double center[2] = {0.6, 0.7};
  const auto ball = oscillation::Region::ball(center, 0.1);
  const auto dirs = oscillation::uniform_direction_grid(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oscillation::best_direction(field.view(), ball, dirs));
}
BENCHMARK(BM_BestDirection)->Arg(4)->Arg(16)->Arg(64);

void BM_VerifyExampleBound(benchmark::State& state) {
  const fields::ExampleParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oscillation::verify_example_bound(params, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_VerifyExampleBound)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
