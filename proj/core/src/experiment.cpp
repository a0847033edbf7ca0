#include "mtsr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "mtsr/calibration.hpp"
#include "mtsr/errors.hpp"
#include "mtsr/rng.hpp"

namespace mtsr {
namespace {

constexpr double kWilsonZ = 1.959963984540054;
constexpr double kLowProbability = 0.05;
constexpr double kHighProbability = 0.95;

// One (procedure, p, beta) row of the sweep that survived calibration.
struct ActiveCurve {
  Procedure procedure;
  std::size_t p_index;
  std::size_t beta_index;
  ProblemConfig problem;
  ProcedureThresholds thresholds;
  double mu_reference;
};

struct Tally {
  std::size_t success = 0;
  std::size_t false_inclusion = 0;
  std::size_t false_exclusion = 0;
};

}  // namespace

double reference_mu(Procedure procedure, MuScale scale, const ProblemConfig& problem) {
  if (scale == MuScale::lasso) return mu_lasso(problem);
  switch (procedure) {
    case Procedure::lasso:
    case Procedure::union_of_supports:
      return mu_lasso(problem);
    case Procedure::group_l2:
      return mu_group(problem);
    case Procedure::group_linf:
      return mu_linf(problem);
  }
  throw std::logic_error("unknown procedure");
}

std::string_view to_string(MuScale scale) noexcept {
  return scale == MuScale::own ? "own" : "lasso";
}

std::vector<double> SweepConfig::default_rho_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 14; ++i) grid.push_back(static_cast<double>(5 + 15 * i) / 100.0);
  return grid;
}

void SweepConfig::validate() const {
  if (p_list.empty()) throw ConfigError("p_list", "must not be empty");
  for (std::size_t p : p_list) {
    if (p < 2) throw ConfigError("p_list", "every p must be >= 2");
  }
  if (beta_list.empty()) throw ConfigError("beta_list", "must not be empty");
  for (double b : beta_list) {
    if (!(b >= 0.0 && b < 1.0)) throw ConfigError("beta_list", "every beta must lie in [0, 1)");
  }
  if (rho_grid.empty()) throw ConfigError("rho_grid", "must not be empty");
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    if (!(rho_grid[i] > 0.0) || !std::isfinite(rho_grid[i])) {
      throw ConfigError("rho_grid", "values must be positive and finite");
    }
    if (i > 0 && !(rho_grid[i] > rho_grid[i - 1])) {
      throw ConfigError("rho_grid", "must be strictly increasing");
    }
  }
  if (n_runs == 0) throw ConfigError("n_runs", "must be positive");
  if (procedures.empty()) throw ConfigError("procedures", "must not be empty");
  for (std::size_t i = 0; i < procedures.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (procedures[i] == procedures[j]) throw ConfigError("procedures", "duplicate entry");
    }
  }
  if (!(alpha_prime > 0.0 && alpha_prime < 1.0)) {
    throw ConfigError("alpha_prime", "must lie in (0, 1)");
  }
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    throw ConfigError("delta_prime", "must lie in (0, 1)");
  }
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw ConfigError("sigma0", "must be positive");
}

DerivedSizes derive_sizes(std::size_t p) {
  if (p < 2) throw ConfigError("p", "must be >= 2 to derive k and s");
  DerivedSizes d;
  d.p = p;
  d.s = static_cast<std::size_t>(std::bit_width(p) - 1);
  d.k = static_cast<std::size_t>(
      std::floor(static_cast<double>(p) * std::log2(static_cast<double>(p))));
  d.n = std::max<std::size_t>(1, p / 10);
  return d;
}

ProblemConfig cell_problem(const SweepConfig& config, std::size_t p, double beta) {
  const DerivedSizes d = derive_sizes(p);
  return ProblemConfig::from_beta(d.p, d.k, d.s, d.n, config.sigma0, beta, config.alpha_prime,
                                  config.delta_prime);
}

Interval wilson_interval(std::size_t n_success, std::size_t n_runs) {
  if (n_runs == 0) return {0.0, 1.0};
  const double n = static_cast<double>(n_runs);
  const double phat = static_cast<double>(n_success) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = kWilsonZ / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  // The interval always contains phat; at phat = 0 or 1 rounding could push
  // the closed-form endpoint a hair past it.
  return {std::clamp(center - half, 0.0, phat), std::clamp(center + half, phat, 1.0)};
}

ProcedureThresholds thresholds_for(Procedure procedure, const ProblemConfig& config) {
  ProcedureThresholds t;
  t.procedure = procedure;
  switch (procedure) {
    case Procedure::lasso:
      t.lambda = lambda_lasso(config);
      break;
    case Procedure::group_l2:
      t.lambda_group_sq = lambda_group_l2(config);
      break;
    case Procedure::group_linf:
      t.lambda = lambda_group_linf(config);
      break;
    case Procedure::union_of_supports: {
      ProblemConfig half = config;
      half.alpha_prime = config.alpha_prime / 2.0;
      t.lambda = lambda_lasso(half);
      t.lambda_group_sq = lambda_group_l2(half);
      break;
    }
  }
  return t;
}

SupportSet apply_procedure(const ProcedureThresholds& thresholds, const Matrix& observations) {
  switch (thresholds.procedure) {
    case Procedure::lasso:
      return support_lasso(observations, thresholds.lambda);
    case Procedure::group_l2:
      return support_group_l2(observations, thresholds.lambda_group_sq);
    case Procedure::group_linf:
      return support_group_linf(observations, thresholds.lambda);
    case Procedure::union_of_supports:
      return support_union(observations, thresholds.lambda, thresholds.lambda_group_sq);
  }
  throw std::logic_error("unknown procedure");
}

const MuReference* SweepResult::find_mu_reference(Procedure procedure, std::size_t p,
                                                  double beta) const {
  for (const auto& m : mu_reference) {
    if (m.procedure == procedure && m.p == p && m.beta == beta) return &m;
  }
  return nullptr;
}

const LowerBoundReference* SweepResult::find_lower_bound(std::size_t p, double beta) const {
  for (const auto& l : lower_bound_mu) {
    if (l.p == p && l.beta == beta) return &l;
  }
  return nullptr;
}

SweepResult run_sweep(const SweepConfig& config, unsigned threads) {
  config.validate();
  SweepResult result;
  result.config = config;

  std::vector<ActiveCurve> curves;
  for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
    for (std::size_t bi = 0; bi < config.beta_list.size(); ++bi) {
      const std::size_t p = config.p_list[pi];
      const double beta = config.beta_list[bi];
      const ProblemConfig problem = cell_problem(config, p, beta);
      result.lower_bound_mu.push_back(
          {p, beta, mu_lower_bound(problem, config.alpha_prime + config.delta_prime)});
      for (Procedure procedure : config.procedures) {
        try {
          ActiveCurve curve{procedure, pi, bi, problem, thresholds_for(procedure, problem),
                            reference_mu(procedure, config.mu_scale, problem)};
          result.mu_reference.push_back({procedure, p, beta, curve.mu_reference});
          curves.push_back(curve);
        } catch (const CalibrationInvalid& e) {
          result.skipped.push_back({procedure, p, beta, e.what()});
        }
      }
    }
  }

  // Curves sharing (p, beta) are scored on shared instances.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_data_cell;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    by_data_cell[{curves[c].p_index, curves[c].beta_index}].push_back(c);
  }
  struct DataCell {
    std::size_t p_index;
    std::size_t beta_index;
    std::vector<std::size_t> curve_ids;
  };
  std::vector<DataCell> data_cells;
  for (auto& [key, ids] : by_data_cell) data_cells.push_back({key.first, key.second, ids});

  const std::size_t n_rho = config.rho_grid.size();
  const std::size_t n_items = data_cells.size() * n_rho * config.n_runs;
  const std::size_t n_slots = curves.size() * n_rho;

  const unsigned workers = std::max(1u, threads);
  std::vector<std::vector<Tally>> partial(workers, std::vector<Tally>(n_slots));
  std::atomic<std::size_t> next{0};

  auto work = [&](unsigned worker) {
    auto& tallies = partial[worker];
    Matrix y;
    std::vector<double> generated_mu;
    for (;;) {
      const std::size_t item = next.fetch_add(1, std::memory_order_relaxed);
      if (item >= n_items) break;
      const std::size_t rep = item % config.n_runs;
      const std::size_t rho_index = (item / config.n_runs) % n_rho;
      const DataCell& cell = data_cells[item / (config.n_runs * n_rho)];
      const double rho = config.rho_grid[rho_index];
      const std::uint64_t seed =
          derive_key({config.master_seed, cell.p_index, cell.beta_index, rho_index, rep});

      // Group curves by signal value so each distinct instance is drawn once.
      generated_mu.clear();
      for (std::size_t first : cell.curve_ids) {
        const double mu_value = rho * curves[first].mu_reference;
        if (std::find(generated_mu.begin(), generated_mu.end(), mu_value) != generated_mu.end()) {
          continue;
        }
        generated_mu.push_back(mu_value);
        const ProblemConfig& problem = curves[first].problem;
        generate_observations(problem, mu_value, seed, y);
        const SupportSet truth = SupportSet::first_rows(problem.p, problem.s);
        for (std::size_t id : cell.curve_ids) {
          if (rho * curves[id].mu_reference != mu_value) continue;
          const SupportSet estimate = apply_procedure(curves[id].thresholds, y);
          Tally& t = tallies[id * n_rho + rho_index];
          if (estimate == truth) ++t.success;
          if (!estimate.empty() && estimate.indices().back() >= problem.s) ++t.false_inclusion;
          if (!estimate.includes(truth)) ++t.false_exclusion;
        }
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::vector<Tally> total(n_slots);
  for (const auto& part : partial) {
    for (std::size_t i = 0; i < n_slots; ++i) {
      total[i].success += part[i].success;
      total[i].false_inclusion += part[i].false_inclusion;
      total[i].false_exclusion += part[i].false_exclusion;
    }
  }

  // Output order: procedure (as configured), p, beta, rho.
  for (Procedure procedure : config.procedures) {
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const ActiveCurve& curve = curves[c];
      if (curve.procedure != procedure) continue;
      for (std::size_t r = 0; r < n_rho; ++r) {
        const Tally& t = total[c * n_rho + r];
        CellResult cell;
        cell.procedure = procedure;
        cell.p = curve.problem.p;
        cell.k = curve.problem.k;
        cell.s = curve.problem.s;
        cell.n = curve.problem.n;
        cell.beta = curve.problem.beta;
        cell.rho = config.rho_grid[r];
        cell.n_runs = config.n_runs;
        cell.n_success = t.success;
        cell.p_success = static_cast<double>(t.success) / static_cast<double>(config.n_runs);
        const Interval ci = wilson_interval(t.success, config.n_runs);
        cell.ci_low = ci.low;
        cell.ci_high = ci.high;
        cell.n_false_inclusion = t.false_inclusion;
        cell.n_false_exclusion = t.false_exclusion;
        cell.mu_value = cell.rho * curve.mu_reference;
        result.cells.push_back(cell);
      }
    }
  }
  return result;
}

TransitionWindow transition_window(std::span<const CurvePoint> curve) {
  if (curve.empty()) throw std::invalid_argument("transition_window: empty curve");
  TransitionWindow w{curve.front().rho, curve.back().rho};
  std::size_t high_index = curve.size() - 1;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].p_success >= kHighProbability) {
      high_index = i;
      break;
    }
  }
  w.rho_high = curve[high_index].rho;
  for (std::size_t i = 0; i <= high_index; ++i) {
    if (curve[i].p_success <= kLowProbability) w.rho_low = curve[i].rho;
  }
  return w;
}

std::vector<CurvePoint> curve_for(const SweepResult& result, Procedure procedure, std::size_t p,
                                  double beta) {
  std::vector<CurvePoint> out;
  for (const auto& cell : result.cells) {
    if (cell.procedure == procedure && cell.p == p && cell.beta == beta) {
      out.push_back({cell.rho, cell.p_success});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.rho < b.rho; });
  return out;
}

double mc_difference_error(double p_a, double p_b, std::size_t n_runs) {
  const double n = static_cast<double>(n_runs);
  const double se = std::sqrt((p_a * (1.0 - p_a) + p_b * (1.0 - p_b)) / n);
  return std::max(3.0 * se, 1.0 / n);
}

OrderingReport compare_procedures(const SweepResult& result, std::size_t p, double beta,
                                  double tolerance) {
  if (result.config.mu_scale != MuScale::lasso) {
    throw std::invalid_argument("compare_procedures needs a matched-scale (mu_scale = lasso) sweep");
  }
  OrderingReport report;
  report.p = p;
  report.beta = beta;

  std::map<Procedure, std::vector<CurvePoint>> curves;
  for (Procedure procedure : {Procedure::lasso, Procedure::group_l2, Procedure::group_linf,
                              Procedure::union_of_supports}) {
    auto curve = curve_for(result, procedure, p, beta);
    if (!curve.empty()) {
      curves[procedure] = std::move(curve);
    } else if (procedure != Procedure::union_of_supports) {
      report.missing.emplace_back(to_string(procedure));
    }
  }

  const auto lookup = [&](Procedure procedure, double rho) -> const CurvePoint* {
    auto it = curves.find(procedure);
    if (it == curves.end()) return nullptr;
    for (const auto& pt : it->second) {
      if (pt.rho == rho) return &pt;
    }
    return nullptr;
  };

  const bool have_pair = curves.count(Procedure::lasso) && curves.count(Procedure::group_l2);
  const bool have_linf = curves.count(Procedure::group_linf) > 0;
  report.group_beats_lasso = have_pair;
  report.lasso_beats_group = have_pair;
  report.linf_dominated = have_linf && curves.size() > 1;

  for (double rho : result.config.rho_grid) {
    RankedPoint point;
    point.rho = rho;
    for (const auto& [procedure, curve] : curves) {
      if (const CurvePoint* pt = lookup(procedure, rho)) point.ranking.emplace_back(procedure, pt->p_success);
    }
    std::stable_sort(point.ranking.begin(), point.ranking.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    const CurvePoint* lasso = lookup(Procedure::lasso, rho);
    const CurvePoint* group = lookup(Procedure::group_l2, rho);
    const auto inside = [](const CurvePoint* pt) {
      return pt && pt->p_success > kLowProbability && pt->p_success < kHighProbability;
    };
    point.mid_transition = inside(lasso) || inside(group);
    if (point.mid_transition && lasso && group) {
      ++report.mid_transition_points;
      if (group->p_success < lasso->p_success - tolerance) report.group_beats_lasso = false;
      if (lasso->p_success < group->p_success - tolerance) report.lasso_beats_group = false;
    }

    if (const CurvePoint* linf = lookup(Procedure::group_linf, rho)) {
      double best_other = -1.0;
      for (const auto& [procedure, value] : point.ranking) {
        if (procedure != Procedure::group_linf) best_other = std::max(best_other, value);
      }
      if (best_other >= 0.0 &&
          linf->p_success - best_other >
              mc_difference_error(linf->p_success, best_other, result.config.n_runs)) {
        report.linf_dominated = false;
      }
    }
    report.points.push_back(std::move(point));
  }
  return report;
}

}  // namespace mtsr
