#include <benchmark/benchmark.h>

#include <numeric>

#include "stablefs/cross_validation.hpp"
#include "stablefs/stability.hpp"

using namespace stablefs;

namespace {

SampleList all_rows(const Dataset& ds) {
  SampleList rows(ds.n_samples());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

void BM_RankFeatures(benchmark::State& state) {
  const auto syn = make_synthetic(100, static_cast<std::size_t>(state.range(0)), 10, 2.5, 1);
  const auto rows = all_rows(syn.data);
  const auto kind = kAllCriteria[state.range(1)];
  for (auto _ : state) benchmark::DoNotOptimize(rank_features(syn.data, rows, kind, 10));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_RankFeatures)->ArgsProduct({{500, 5000}, {0, 1, 2}});

void BM_BuildHistogram(benchmark::State& state) {
  const auto syn = make_synthetic(100, 2000, 10, 2.5, 2);
  const auto rows = all_rows(syn.data);
  HistogramConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_histogram(syn.data, rows, cfg));
}
BENCHMARK(BM_BuildHistogram)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CvAccuracyCurve(benchmark::State& state) {
  const auto syn = make_synthetic(100, 500, 10, 2.5, 3);
  const auto rows = all_rows(syn.data);
  const auto folds = kfold_for(syn.data, rows, 10, 4);
  FeatureList order(syn.data.n_features());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(cv_accuracy_curve(syn.data, rows, order, folds, len));
}
BENCHMARK(BM_CvAccuracyCurve)->Arg(20)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_Select(benchmark::State& state) {
  const auto syn = make_synthetic(100, 500, 10, 2.5, 5);
  const auto rows = all_rows(syn.data);
  HistogramConfig cfg;
  cfg.rounds = 50;
  cfg.per_round_k = 25;
  for (auto _ : state) benchmark::DoNotOptimize(select(syn.data, rows, cfg));
}
BENCHMARK(BM_Select)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
