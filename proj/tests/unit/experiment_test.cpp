#include <cmath>

#include <gtest/gtest.h>

#include "mtsr/calibration.hpp"
#include "mtsr/errors.hpp"
#include "mtsr/experiment.hpp"
#include "mtsr/io.hpp"

namespace mtsr {
namespace {

SweepConfig tiny_sweep() {
  SweepConfig c;
  c.p_list = {16};
  c.beta_list = {0.0, 0.5};
  c.rho_grid = {0.2, 1.0, 2.0};
  c.n_runs = 30;
  return c;
}

TEST(SweepConfig, DefaultsAndValidation) {
  SweepConfig c;
  ASSERT_EQ(c.rho_grid.size(), 14u);
  EXPECT_DOUBLE_EQ(c.rho_grid.front(), 0.05);
  EXPECT_DOUBLE_EQ(c.rho_grid.back(), 2.0);
  EXPECT_THROW(c.validate(), ConfigError);  // empty p_list
  c = tiny_sweep();
  EXPECT_NO_THROW(c.validate());
  c.rho_grid = {1.0, 0.5};
  EXPECT_THROW(c.validate(), ConfigError);
  c = tiny_sweep();
  c.beta_list = {1.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = tiny_sweep();
  c.n_runs = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(DeriveSizes, PaperRule) {
  const auto a = derive_sizes(128);
  EXPECT_EQ(a.k, 896u);
  EXPECT_EQ(a.s, 7u);
  EXPECT_EQ(a.n, 12u);
  const auto b = derive_sizes(256);
  EXPECT_EQ(b.k, 2048u);
  EXPECT_EQ(b.s, 8u);
  EXPECT_EQ(b.n, 25u);
  EXPECT_EQ(derive_sizes(5).n, 1u);
  const auto problem = cell_problem(tiny_sweep(), 128, 0.5);
  EXPECT_DOUBLE_EQ(problem.epsilon, std::pow(896.0, -0.5));
}

TEST(Wilson, KnownValues) {
  const auto all = wilson_interval(10, 10);
  EXPECT_DOUBLE_EQ(all.high, 1.0);
  EXPECT_NEAR(all.low, 0.7224672001371107, 1e-12);
  const auto none = wilson_interval(0, 20);
  EXPECT_DOUBLE_EQ(none.low, 0.0);
  const auto half = wilson_interval(50, 100);
  EXPECT_NEAR(half.low + half.high, 1.0, 1e-15);
}

TEST(TransitionWindow, Definition) {
  const std::vector<CurvePoint> c1 = {{0.5, 0.0}, {1.0, 0.5}, {1.5, 0.96}, {2.0, 1.0}};
  auto w = transition_window(c1);
  EXPECT_DOUBLE_EQ(w.rho_low, 0.5);
  EXPECT_DOUBLE_EQ(w.rho_high, 1.5);
  const std::vector<CurvePoint> ones = {{0.5, 1}, {1.0, 1}, {1.5, 1}};
  w = transition_window(ones);
  EXPECT_DOUBLE_EQ(w.rho_low, 0.5);
  EXPECT_DOUBLE_EQ(w.rho_high, 0.5);
  const std::vector<CurvePoint> zeros = {{0.5, 0}, {1.0, 0}, {1.5, 0}};
  w = transition_window(zeros);
  EXPECT_DOUBLE_EQ(w.rho_low, 1.5);
  EXPECT_DOUBLE_EQ(w.rho_high, 1.5);
  EXPECT_THROW(transition_window(std::vector<CurvePoint>{}), std::invalid_argument);
}

TEST(McDifferenceError, Floor) {
  EXPECT_DOUBLE_EQ(mc_difference_error(0.0, 0.0, 200), 1.0 / 200);
  EXPECT_NEAR(mc_difference_error(0.5, 0.5, 100), 3 * std::sqrt(0.5 / 100), 1e-15);
}

TEST(Thresholds, UnionSplitsBudget) {
  const auto problem = cell_problem(tiny_sweep(), 128, 0.0);
  auto half = problem;
  half.alpha_prime /= 2;
  const auto u = thresholds_for(Procedure::union_of_supports, problem);
  EXPECT_DOUBLE_EQ(u.lambda, lambda_lasso(half));
  EXPECT_DOUBLE_EQ(u.lambda_group_sq, lambda_group_l2(half));
  EXPECT_DOUBLE_EQ(thresholds_for(Procedure::lasso, problem).lambda, lambda_lasso(problem));
  EXPECT_DOUBLE_EQ(thresholds_for(Procedure::group_linf, problem).lambda,
                   lambda_group_linf(problem));
}

TEST(ReferenceMu, Scales) {
  const auto problem = cell_problem(tiny_sweep(), 128, 0.0);
  EXPECT_DOUBLE_EQ(reference_mu(Procedure::group_l2, MuScale::own, problem), mu_group(problem));
  EXPECT_DOUBLE_EQ(reference_mu(Procedure::group_l2, MuScale::lasso, problem), mu_lasso(problem));
  EXPECT_DOUBLE_EQ(reference_mu(Procedure::union_of_supports, MuScale::own, problem),
                   mu_lasso(problem));
}

TEST(RunSweep, ShapeAndInvariants) {
  const auto config = tiny_sweep();
  const auto result = run_sweep(config, 1);
  std::size_t expected = 0;
  for (auto procedure : config.procedures) {
    for (double beta : config.beta_list) {
      if (!result.find_mu_reference(procedure, 16, beta)) continue;
      expected += config.rho_grid.size();
    }
  }
  EXPECT_EQ(result.cells.size(), expected);
  EXPECT_EQ(expected / config.rho_grid.size() + result.skipped.size(),
            config.procedures.size() * config.beta_list.size());
  for (const auto& cell : result.cells) {
    EXPECT_LE(cell.n_success, cell.n_runs);
    EXPECT_EQ(cell.n_runs, config.n_runs);
    EXPECT_DOUBLE_EQ(cell.p_success, static_cast<double>(cell.n_success) / cell.n_runs);
    EXPECT_LE(cell.ci_low, cell.p_success);
    EXPECT_GE(cell.ci_high, cell.p_success);
    // A successful run has neither kind of error.
    EXPECT_LE(cell.n_success + cell.n_false_inclusion, cell.n_runs);
    EXPECT_LE(cell.n_success + cell.n_false_exclusion, cell.n_runs);
  }
  ASSERT_NE(result.find_lower_bound(16, 0.0), nullptr);
}

TEST(RunSweep, VanishingSignalNeverRecovers) {
  auto config = tiny_sweep();
  config.rho_grid = {1e-6};
  for (const auto& cell : run_sweep(config).cells) EXPECT_EQ(cell.n_success, 0u);
}

TEST(RunSweep, ThreadCountInvariant) {
  const auto config = tiny_sweep();
  const auto one = run_sweep(config, 1);
  const auto three = run_sweep(config, 3);
  EXPECT_EQ(sweep_csv(one), sweep_csv(three));
}

TEST(RunSweep, SkipsInvalidCalibration) {
  SweepConfig config;
  config.p_list = {128};
  config.beta_list = {0.75};
  config.rho_grid = {1.0};
  config.n_runs = 2;
  const auto result = run_sweep(config);
  ASSERT_EQ(result.skipped.size(), 2u);
  for (const auto& s : result.skipped) {
    EXPECT_TRUE(s.procedure == Procedure::group_l2 || s.procedure == Procedure::group_linf);
    EXPECT_FALSE(s.reason.empty());
  }
  EXPECT_TRUE(curve_for(result, Procedure::group_l2, 128, 0.75).empty());
  EXPECT_EQ(curve_for(result, Procedure::lasso, 128, 0.75).size(), 1u);
}

TEST(CompareProcedures, RequiresMatchedScale) {
  const auto result = run_sweep(tiny_sweep());
  EXPECT_THROW(compare_procedures(result, 16, 0.0), std::invalid_argument);
}

TEST(CompareProcedures, DenseRowsFavourGroup) {
  SweepConfig config;
  config.p_list = {64};
  config.beta_list = {0.0};
  config.rho_grid = {0.1, 0.2, 0.3, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
  config.n_runs = 60;
  config.procedures = {Procedure::lasso, Procedure::group_l2, Procedure::group_linf};
  config.mu_scale = MuScale::lasso;
  const auto report = compare_procedures(run_sweep(config), 64, 0.0);
  EXPECT_TRUE(report.missing.empty());
  EXPECT_GT(report.mid_transition_points, 0u);
  EXPECT_TRUE(report.group_beats_lasso);
  EXPECT_FALSE(report.lasso_beats_group);
  EXPECT_TRUE(report.linf_dominated);
  for (const auto& point : report.points) {
    for (std::size_t i = 1; i < point.ranking.size(); ++i) {
      EXPECT_GE(point.ranking[i - 1].second, point.ranking[i].second);
    }
  }
}

TEST(TypeI, PerRowFalseInclusionWithinBudget) {
  // Thresholds from p = 128 (k = 896, s = 7); 10^5 pure-noise rows scored in
  // chunks of 1000. The per-row budget is alpha'/(p - s).
  const auto problem = cell_problem(tiny_sweep(), 128, 0.0);
  const double budget = problem.alpha_prime / static_cast<double>(problem.p - problem.s);
  auto noise = problem;
  noise.p = 1000;
  noise.s = 0;
  constexpr std::size_t kChunks = 100;
  const double rows = static_cast<double>(kChunks * noise.p);
  const double limit = budget + 3.0 * std::sqrt(budget * (1.0 - budget) / rows);
  Matrix y;
  for (auto procedure : {Procedure::lasso, Procedure::group_l2, Procedure::group_linf}) {
    const auto thresholds = thresholds_for(procedure, problem);
    std::size_t false_rows = 0;
    for (std::uint64_t chunk = 0; chunk < kChunks; ++chunk) {
      generate_observations(noise, 0.0, 1000 + chunk, y);
      false_rows += apply_procedure(thresholds, y).size();
    }
    EXPECT_LE(false_rows / rows, limit) << to_string(procedure) << " false rows " << false_rows;
  }
}

}  // namespace
}  // namespace mtsr
