#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "vmolab/fields.hpp"
#include "vmolab/solver.hpp"

namespace {

using namespace vmolab;

fields::MatrixField example_matrix(int n) {
  return fields::embed_as_matrix(fields::example_field(fields::ExampleParams{}, n), 0.25);
}

void BM_Discretize(benchmark::State& state) {
  const auto a = example_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solver::discretize(a, 64.0));
}
BENCHMARK(BM_Discretize)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = example_matrix(n);
  const auto op = solver::discretize(a, static_cast<double>(state.range(1)));
  const auto f = GridFunction::sample(a.shape, [](std::span<const double> x) {
    return std::sin(2.0 * std::numbers::pi * x[0]) * std::cos(2.0 * std::numbers::pi * x[1]);
  });
  for (auto _ : state) benchmark::DoNotOptimize(solver::solve(op, f));
}
BENCHMARK(BM_Solve)->Args({128, 16})->Args({128, 4096})->Args({256, 16})->Unit(benchmark::kMillisecond);

void BM_AgmonLift(benchmark::State& state) {
  const GridShape shape(1, static_cast<int>(state.range(0)));
  const auto u = GridFunction::sample(shape, [](std::span<const double> x) { return std::sin(2.0 * std::numbers::pi * x[0]); });
  const auto a = fields::constant_field(shape, Eigen::MatrixXd::Identity(1, 1), 1.0);
  const auto zeta = cutoff::ZetaCutoff::bump(0.5, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(solver::agmon_lift_check(u, zeta, 5.0, a));
}
BENCHMARK(BM_AgmonLift)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
