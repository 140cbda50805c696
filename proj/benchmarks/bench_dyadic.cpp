#include <random>

#include <benchmark/benchmark.h>

#include "vmolab/dyadic.hpp"
#include "vmolab/sharp.hpp"

namespace {

using namespace vmolab;

dyadic::WeightedFunction random_function(const dyadic::PartitionFiltration& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(f.space()->size());
  for (double& v : values) v = normal(rng);
  return dyadic::WeightedFunction(f.space(), std::move(values));
}

void BM_DyadicMaximal(benchmark::State& state) {
  const auto f = dyadic::build_dyadic_filtration(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto u = random_function(f, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dyadic::dyadic_maximal(f, u));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.space()->size()));
}
BENCHMARK(BM_DyadicMaximal)->Args({1, 10})->Args({1, 16})->Args({2, 5})->Args({2, 8});

void BM_SharpFunction(benchmark::State& state) {
  const auto f = dyadic::build_dyadic_filtration(2, static_cast<int>(state.range(0)));
  const auto u = random_function(f, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sharp::sharp_function(f, u));
}
BENCHMARK(BM_SharpFunction)->Arg(4)->Arg(6)->Arg(8);

void BM_FsTrial(benchmark::State& state) {
  const std::vector<double> ps{2.5, 3.0, 4.0};
  int trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sharp::fs_trial(7, trial++, ps));
}
BENCHMARK(BM_FsTrial);

}  // namespace
