#include <benchmark/benchmark.h>

#include "mtsr/calibration.hpp"
#include "mtsr/estimators.hpp"
#include "mtsr/experiment.hpp"
#include "mtsr/model.hpp"
#include "mtsr/special_functions.hpp"

namespace {

mtsr::ProblemConfig problem_for(std::size_t p) {
  const auto d = mtsr::derive_sizes(p);
  return mtsr::ProblemConfig::from_beta(d.p, d.k, d.s, d.n, 1.0, 0.0, 0.01, 0.01);
}

void BM_GenerateObservations(benchmark::State& state) {
  const auto config = problem_for(static_cast<std::size_t>(state.range(0)));
  mtsr::Matrix y;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    mtsr::generate_observations(config, 1.0, seed++, y);
    benchmark::DoNotOptimize(y.data().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.p * config.k));
}
BENCHMARK(BM_GenerateObservations)->Arg(128)->Arg(256);

void BM_Support(benchmark::State& state) {
  const auto config = problem_for(256);
  const auto procedure = static_cast<mtsr::Procedure>(state.range(0));
  const auto thresholds = mtsr::thresholds_for(procedure, config);
  mtsr::Matrix y;
  mtsr::generate_observations(config, 1.0, 7, y);
  for (auto _ : state) benchmark::DoNotOptimize(mtsr::apply_procedure(thresholds, y));
  state.SetLabel(std::string(mtsr::to_string(procedure)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(y.size()));
}
BENCHMARK(BM_Support)->DenseRange(0, 3);

void BM_EstimateLasso(benchmark::State& state) {
  const auto config = problem_for(256);
  mtsr::Matrix y;
  mtsr::generate_observations(config, 1.0, 7, y);
  const double lambda = mtsr::lambda_lasso(config);
  for (auto _ : state) benchmark::DoNotOptimize(mtsr::estimate_lasso(y, lambda));
}
BENCHMARK(BM_EstimateLasso);

void BM_EstimateGroupL2(benchmark::State& state) {
  const auto config = problem_for(256);
  mtsr::Matrix y;
  mtsr::generate_observations(config, 1.0, 7, y);
  const double lambda_sq = mtsr::lambda_group_l2(config);
  for (auto _ : state) benchmark::DoNotOptimize(mtsr::estimate_group_l2(y, lambda_sq));
}
BENCHMARK(BM_EstimateGroupL2);

void BM_ChiSquareQuantile(benchmark::State& state) {
  const auto dof = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mtsr::chi_square_quantile(dof, 1e-4));
}
BENCHMARK(BM_ChiSquareQuantile)->Arg(2)->Arg(896)->Arg(2048);

void BM_Calibrate(benchmark::State& state) {
  const auto config = problem_for(256);
  for (auto _ : state) benchmark::DoNotOptimize(mtsr::calibrate(config));
}
BENCHMARK(BM_Calibrate);

}  // namespace

BENCHMARK_MAIN();
