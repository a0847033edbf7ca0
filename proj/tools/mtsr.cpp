// mtsr: command-line front end for the multi-task support recovery library.
//
// Exit codes: 0 success, 1 selftest failure, 2 configuration error,
// 3 calibration invalid, 4 I/O error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "mtsr/calibration.hpp"
#include "mtsr/errors.hpp"
#include "mtsr/estimators.hpp"
#include "mtsr/experiment.hpp"
#include "mtsr/io.hpp"
#include "mtsr/lemma_checks.hpp"
#include "mtsr/model.hpp"
#include "mtsr/theory.hpp"

namespace {

constexpr int kExitSelftest = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCalibration = 3;
constexpr int kExitIo = 4;

mtsr::ProblemConfig load_problem(const std::string& path) {
  auto parsed = mtsr::parse_config(path);
  if (auto* problem = std::get_if<mtsr::ProblemConfig>(&parsed)) return *problem;
  throw mtsr::ConfigError("", path + " holds a sweep config; a problem config is required");
}

mtsr::SweepConfig load_sweep(const std::string& path) {
  auto parsed = mtsr::parse_config(path);
  if (auto* sweep = std::get_if<mtsr::SweepConfig>(&parsed)) return *sweep;
  throw mtsr::ConfigError("p_list", path + " is not a sweep config");
}

unsigned resolve_threads(unsigned requested) {
  if (const char* env = std::getenv("MTSR_THREADS"); env && *env) {
    try {
      const unsigned long v = std::stoul(env);
      if (v == 0) throw mtsr::ConfigError("MTSR_THREADS", "must be positive");
      return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
      throw mtsr::ConfigError("MTSR_THREADS", "expected a positive integer");
    }
  }
  return requested == 0 ? 1 : requested;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal-means multi-task support recovery laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mtsr::kToolVersion);

  // generate
  auto* generate = app.add_subcommand("generate", "Draw one instance and write Y as CSV");
  std::string gen_config, gen_out, gen_means_out, gen_support_out;
  double gen_mu = 0.0;
  std::uint64_t gen_seed = 0;
  generate->add_option("--config", gen_config, "Problem config JSON")->required();
  generate->add_option("--mu", gen_mu, "Signal value of active entries")->required();
  generate->add_option("--seed", gen_seed, "Reproducibility token");
  generate->add_option("--out", gen_out, "Observation matrix CSV")->required();
  generate->add_option("--means-out", gen_means_out, "Mean matrix CSV");
  generate->add_option("--support-out", gen_support_out, "True support CSV");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Apply one procedure to an observation CSV");
  std::string est_input, est_procedure = "lasso", est_config, est_out, est_support_out;
  std::optional<double> est_lambda, est_lambda_group_sq;
  estimate->add_option("--input", est_input, "Observation matrix CSV")->required();
  estimate->add_option("--procedure", est_procedure, "lasso | group_l2 | group_linf | union")
      ->check(CLI::IsMember({"lasso", "group_l2", "group_linf", "union"}));
  estimate->add_option("--lambda", est_lambda,
                       "Threshold (lasso, group_linf, or the lasso half of union)");
  estimate->add_option("--lambda-group-sq", est_lambda_group_sq,
                       "Squared-units threshold for group_l2 (or its half of union)");
  estimate->add_option("--config", est_config, "Problem config used to calibrate thresholds");
  estimate->add_option("--out", est_out, "Estimated mean matrix CSV (lasso, group_l2)");
  estimate->add_option("--support-out", est_support_out, "Support CSV (stdout when omitted)");

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Print the calibration report as JSON");
  std::string cal_config;
  calibrate->add_option("--config", cal_config, "Problem config JSON")->required();

  // lowerbound
  auto* lowerbound = app.add_subcommand("lowerbound", "Print the minimax lower bound as JSON");
  std::string lb_config;
  std::optional<double> lb_alpha;
  lowerbound->add_option("--config", lb_config, "Problem config JSON")->required();
  lowerbound->add_option("--alpha", lb_alpha, "Error level (default alpha' + delta')");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a Monte-Carlo phase-transition sweep");
  std::string sw_config, sw_out, sw_plot;
  unsigned sw_threads = 1;
  std::optional<std::uint64_t> sw_seed;
  bool sw_dry_run = false;
  sweep->add_option("--config", sw_config, "Sweep config JSON")->required();
  sweep->add_option("--out", sw_out, "Result CSV");
  sweep->add_option("--plot", sw_plot, "SVG figure");
  sweep->add_option("--threads", sw_threads, "Worker threads (MTSR_THREADS overrides)");
  sweep->add_option("--seed", sw_seed, "Override master_seed");
  sweep->add_flag("--dry-run", sw_dry_run, "Validate and print derived sizes only");

  // plot
  auto* plot = app.add_subcommand("plot", "Render a sweep CSV as SVG");
  std::string pl_input, pl_out, pl_config;
  plot->add_option("--input", pl_input, "Sweep result CSV")->required();
  plot->add_option("--out", pl_out, "SVG path")->required();
  plot->add_option("--config", pl_config, "Sweep config (adds lower-bound reference lines)");

  auto* selftest = app.add_subcommand("selftest", "Run the lemma oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*generate) {
      const auto problem = load_problem(gen_config);
      const auto instance = mtsr::generate_instance(problem, gen_mu, gen_seed);
      mtsr::write_file_atomic(gen_out, mtsr::matrix_csv(instance.observations));
      if (!gen_means_out.empty()) {
        mtsr::write_file_atomic(gen_means_out, mtsr::matrix_csv(instance.means));
      }
      if (!gen_support_out.empty()) {
        mtsr::write_file_atomic(gen_support_out, mtsr::support_csv(instance.support));
      }
    } else if (*estimate) {
      const auto y = mtsr::parse_matrix_csv(mtsr::read_file(est_input));
      const auto procedure = *mtsr::procedure_from_string(est_procedure);
      mtsr::ProcedureThresholds t;
      if (!est_config.empty()) {
        auto problem = load_problem(est_config);
        if (problem.p != y.rows() || problem.k != y.cols()) {
          throw mtsr::ConfigError("p", "config dimensions do not match the input matrix");
        }
        t = mtsr::thresholds_for(procedure, problem);
      }
      t.procedure = procedure;
      if (est_lambda) t.lambda = *est_lambda;
      if (est_lambda_group_sq) t.lambda_group_sq = *est_lambda_group_sq;
      const bool needs_lambda = procedure != mtsr::Procedure::group_l2;
      const bool needs_group = procedure == mtsr::Procedure::group_l2 ||
                               procedure == mtsr::Procedure::union_of_supports;
      if (est_config.empty() && ((needs_lambda && !est_lambda) || (needs_group && !est_lambda_group_sq))) {
        throw mtsr::ConfigError("lambda", "give --config or the thresholds explicitly");
      }

      mtsr::SupportSet support;
      if (procedure == mtsr::Procedure::lasso || procedure == mtsr::Procedure::group_l2) {
        const auto est = procedure == mtsr::Procedure::lasso
                             ? mtsr::estimate_lasso(y, t.lambda)
                             : mtsr::estimate_group_l2(y, t.lambda_group_sq);
        if (!est_out.empty()) mtsr::write_file_atomic(est_out, mtsr::matrix_csv(est.values));
      } else if (!est_out.empty()) {
        std::cerr << "note: " << est_procedure << " has no coefficient output; --out ignored\n";
      }
      support = mtsr::apply_procedure(t, y);
      if (est_support_out.empty()) {
        std::cout << mtsr::support_csv(support);
      } else {
        mtsr::write_file_atomic(est_support_out, mtsr::support_csv(support));
      }
    } else if (*calibrate) {
      std::cout << mtsr::to_json(mtsr::calibrate(load_problem(cal_config)));
    } else if (*lowerbound) {
      const auto problem = load_problem(lb_config);
      std::cout << mtsr::to_json(
          mtsr::mu_lower_bound(problem, lb_alpha.value_or(problem.total_alpha())));
    } else if (*sweep) {
      auto config = load_sweep(sw_config);
      if (sw_seed) config.master_seed = *sw_seed;
      std::cerr << mtsr::describe_derived(config);
      if (sw_dry_run) return 0;
      if (sw_out.empty()) throw mtsr::ConfigError("out", "--out is required unless --dry-run");
      const std::string started = mtsr::utc_timestamp();
      const auto result = mtsr::run_sweep(config, resolve_threads(sw_threads));
      for (const auto& skipped : result.skipped) {
        std::cerr << "skipped " << mtsr::to_string(skipped.procedure) << " p=" << skipped.p
                  << " beta=" << skipped.beta << ": " << skipped.reason << '\n';
      }
      std::optional<std::filesystem::path> svg;
      if (!sw_plot.empty()) svg = sw_plot;
      const auto manifest = mtsr::write_results(result, sw_out, svg, started);
      for (const auto& out : manifest.outputs) {
        std::cerr << "wrote " << out.path << " sha256=" << out.sha256 << '\n';
      }
    } else if (*plot) {
      std::optional<mtsr::SweepConfig> config;
      if (!pl_config.empty()) config = load_sweep(pl_config);
      auto cells = mtsr::parse_sweep_csv(mtsr::read_file(pl_input));
      mtsr::write_file_atomic(pl_out, mtsr::render_svg(mtsr::plot_input(std::move(cells), config)));
    } else if (*selftest) {
      bool all = true;
      for (const auto& check : mtsr::run_lemma_suite()) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << " (" << check.cases
                  << " cases)" << (check.detail.empty() ? "" : " " + check.detail) << '\n';
        all = all && check.passed;
      }
      return all ? 0 : kExitSelftest;
    }
  } catch (const mtsr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mtsr::CalibrationInvalid& e) {
    std::cerr << "calibration invalid: " << e.what() << '\n';
    return kExitCalibration;
  } catch (const mtsr::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
