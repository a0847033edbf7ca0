#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtsr/estimators.hpp"
#include "mtsr/model.hpp"
#include "mtsr/theory.hpp"

namespace mtsr {

/// Which signal scale rho multiplies. `own`: each procedure's calibrated
/// mu (lasso and union use mu_lasso). `lasso`: every procedure uses mu_lasso,
/// so all procedures see the same absolute signal and can be ranked.
enum class MuScale { own, lasso };

std::string_view to_string(MuScale scale) noexcept;

struct SweepConfig {
  std::vector<std::size_t> p_list;
  std::vector<double> beta_list;
  std::vector<double> rho_grid = default_rho_grid();
  std::size_t n_runs = 200;
  std::vector<Procedure> procedures = {Procedure::lasso, Procedure::group_l2,
                                       Procedure::group_linf, Procedure::union_of_supports};
  std::uint64_t master_seed = 20100913;
  double alpha_prime = 0.01;
  double delta_prime = 0.01;
  double sigma0 = 1.0;
  MuScale mu_scale = MuScale::own;

  /// 0.05, 0.20, ..., 1.85, 2.00.
  static std::vector<double> default_rho_grid();

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Per-p derived sizes: k = floor(p log2 p), s = floor(log2 p), n = max(1, floor(p/10)).
struct DerivedSizes {
  std::size_t p = 0;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t n = 0;
};
DerivedSizes derive_sizes(std::size_t p);

/// The problem instance a sweep uses at (p, beta); epsilon = k^(-beta).
ProblemConfig cell_problem(const SweepConfig& config, std::size_t p, double beta);

struct CellResult {
  Procedure procedure = Procedure::lasso;
  std::size_t p = 0;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t n = 0;
  double beta = 0.0;
  double rho = 0.0;
  std::size_t n_runs = 0;
  std::size_t n_success = 0;
  double p_success = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Runs where some zero row was declared non-zero / some support row was missed.
  std::size_t n_false_inclusion = 0;
  std::size_t n_false_exclusion = 0;
  double mu_value = 0.0;
};

struct SkippedCell {
  Procedure procedure = Procedure::lasso;
  std::size_t p = 0;
  double beta = 0.0;
  std::string reason;
};

struct MuReference {
  Procedure procedure = Procedure::lasso;
  std::size_t p = 0;
  double beta = 0.0;
  double mu = 0.0;
};

struct LowerBoundReference {
  std::size_t p = 0;
  double beta = 0.0;
  LowerBoundReport report;
};

struct SweepResult {
  SweepConfig config;
  std::vector<CellResult> cells;
  std::vector<MuReference> mu_reference;
  std::vector<LowerBoundReference> lower_bound_mu;
  std::vector<SkippedCell> skipped;

  const MuReference* find_mu_reference(Procedure procedure, std::size_t p, double beta) const;
  const LowerBoundReference* find_lower_bound(std::size_t p, double beta) const;
};

/// 95% Wilson score interval for n_success out of n_runs.
struct Interval {
  double low = 0.0;
  double high = 1.0;
};
Interval wilson_interval(std::size_t n_success, std::size_t n_runs);

/// Runs every (procedure, p, beta, rho) cell for `n_runs` replicates.
///
/// Replicate r of data cell (p, beta, rho) draws its instance from a stream
/// keyed by (master_seed, p index, beta index, rho index, r). Procedures that
/// share a signal value at that cell are scored on the same instance. Work is
/// split across `threads` workers; counts are summed, so the result does not
/// depend on scheduling. Cells whose calibration is invalid are recorded in
/// `skipped` instead of aborting.
SweepResult run_sweep(const SweepConfig& config, unsigned threads = 1);

/// Signal scale rho multiplies for `procedure` under `scale`. Throws
/// CalibrationInvalid when the underlying formula is outside its domain.
double reference_mu(Procedure procedure, MuScale scale, const ProblemConfig& problem);

/// Per-run hook used by tests and by the type-I audit: scores one observation
/// matrix against the true support using a procedure's calibrated thresholds.
struct ProcedureThresholds {
  Procedure procedure = Procedure::lasso;
  double lambda = 0.0;        ///< lasso / linf threshold, or lasso part of union
  double lambda_group_sq = 0.0;  ///< group_l2 threshold, or group part of union
};

/// Thresholds used by the sweep for one procedure. The union splits the
/// type-I budget as alpha'/2 for each parent procedure.
ProcedureThresholds thresholds_for(Procedure procedure, const ProblemConfig& config);

SupportSet apply_procedure(const ProcedureThresholds& thresholds, const Matrix& observations);

struct CurvePoint {
  double rho = 0.0;
  double p_success = 0.0;
};

/// Grid interval where recovery probability crosses from <= 0.05 to >= 0.95.
struct TransitionWindow {
  double rho_low = 0.0;
  double rho_high = 0.0;
};

/// rho_high: smallest grid rho with p_success >= 0.95 (last grid point if
/// none). rho_low: largest grid rho not above rho_high with p_success <= 0.05
/// (first grid point if none). Throws std::invalid_argument on an empty curve.
TransitionWindow transition_window(std::span<const CurvePoint> curve);

/// (rho, p_success) for one (procedure, p, beta), sorted by rho. Empty when
/// the cell was skipped or never requested.
std::vector<CurvePoint> curve_for(const SweepResult& result, Procedure procedure, std::size_t p,
                                  double beta);

struct RankedPoint {
  double rho = 0.0;
  std::vector<std::pair<Procedure, double>> ranking;  ///< descending p_success
  bool mid_transition = false;
};

struct OrderingReport {
  std::size_t p = 0;
  double beta = 0.0;
  std::vector<RankedPoint> points;
  std::vector<std::string> missing;
  /// At every mid-transition rho, group_l2 >= lasso - tolerance (and vice versa).
  bool group_beats_lasso = false;
  bool lasso_beats_group = false;
  /// group_linf never exceeds the best other procedure by more than Monte-Carlo error.
  bool linf_dominated = false;
  std::size_t mid_transition_points = 0;
};

/// Ranks procedures at each rho of a matched-scale sweep. Mid-transition
/// points are grid values where lasso or group_l2 lies strictly inside
/// (0.05, 0.95). Throws std::invalid_argument for own-scale sweeps.
OrderingReport compare_procedures(const SweepResult& result, std::size_t p, double beta,
                                  double tolerance = 0.05);

/// Monte-Carlo slack for comparing two success frequencies from n runs each:
/// three standard errors of the difference, never below 1/n.
double mc_difference_error(double p_a, double p_b, std::size_t n_runs);

}  // namespace mtsr
