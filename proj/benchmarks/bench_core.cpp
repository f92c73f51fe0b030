#include <benchmark/benchmark.h>

#include "tocq/dataset.hpp"
#include "tocq/decision_set.hpp"
#include "tocq/mlp.hpp"
#include "tocq/oracle.hpp"

namespace {

using namespace tocq;

void BM_OracleLabel(benchmark::State& state) {
  Scenario scn;
  const auto ds = ee_pair_grid(static_cast<int>(state.range(0)), scn.p_max);
  const auto gains = sample_gains(1024, 2, 1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_label(gains[i++ % gains.size()], ds, scn));
}
BENCHMARK(BM_OracleLabel)->Arg(4)->Arg(64);

void BM_ContinuousOptEE(benchmark::State& state) {
  Scenario scn;
  OracleConfig cfg = OracleConfig::for_utility(scn.utility);
  cfg.grid_points_per_dim = static_cast<int>(state.range(0));
  const auto gains = sample_gains(64, 2, 2);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(continuous_opt(gains[i++ % gains.size()], scn, cfg));
}
BENCHMARK(BM_ContinuousOptEE)->Arg(101)->Arg(1001)->Unit(benchmark::kMicrosecond);

void BM_Forward(benchmark::State& state) {
  Scenario scn;
  const auto data = build_dataset(sample_gains(256, 2, 3), ee_pair_grid(4, scn.p_max), scn);
  TrainConfig cfg;
  cfg.epochs = 1;
  const auto model = train(data, cfg, 4).model;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(forward(model, data.samples[i++ % data.samples.size()].g));
}
BENCHMARK(BM_Forward);

void BM_TrainEpoch(benchmark::State& state) {
  Scenario scn;
  const auto data = build_dataset(sample_gains(9000, 2, 4), ee_pair_grid(16, scn.p_max), scn);
  TrainConfig cfg;
  cfg.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(data, cfg, 16).model.b2);
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
