// Serial reference vs OpenMP kernels on the three Monte-Carlo sweeps.

#include <benchmark/benchmark.h>

#include <vector>

#include "superlocc/bounds.hpp"
#include "superlocc/majorization.hpp"
#include "superlocc/scenarios.hpp"

using namespace superlocc;

namespace {

std::vector<SchmidtPair> make_pairs(std::size_t n, std::size_t d) {
  RandomSource rng(1);
  std::vector<SchmidtPair> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(sample_schmidt_simplex(d, rng), sample_schmidt_simplex(d, rng));
  return pairs;
}

const std::vector<ScenarioRow>& rows() {
  static const auto r = load_scenario_rows(builtin_scenario_rows());
  return r;
}

void BM_ClassifySerial(benchmark::State& state) {
  const auto pairs = make_pairs(200000, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::classify_batch(pairs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pairs.size()));
}

void BM_ClassifyParallel(benchmark::State& state) {
  const auto pairs = make_pairs(200000, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_batch(pairs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pairs.size()));
}

void BM_SurveySerial(benchmark::State& state) {
  const RandomSource rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::survey_bounds(rng, 20000, {}));
  state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_SurveyParallel(benchmark::State& state) {
  const RandomSource rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(survey_bounds(rng, 20000, {}));
  state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_TablesSerial(benchmark::State& state) {
  const RandomSource rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(serial::validate_tables(rows(), 2000, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(rows().size()) * 2000);
}

void BM_TablesParallel(benchmark::State& state) {
  const RandomSource rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(validate_tables(rows(), 2000, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(rows().size()) * 2000);
}

}  // namespace

BENCHMARK(BM_ClassifySerial)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassifyParallel)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SurveySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SurveyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TablesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TablesParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
