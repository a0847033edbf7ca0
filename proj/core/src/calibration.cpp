#include "mtsr/calibration.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mtsr/errors.hpp"
#include "mtsr/special_functions.hpp"
#include "mtsr/theory.hpp"

namespace mtsr {
namespace {

double zero_rows(const ProblemConfig& config, const char* quantity) {
  if (config.p <= config.s) {
    throw CalibrationInvalid(std::string(quantity) + ": requires p > s");
  }
  return static_cast<double>(config.p - config.s);
}

double checked_c(const ProblemConfig& config, const char* quantity) {
  if (config.s == 0) throw CalibrationInvalid(std::string(quantity) + ": requires s >= 1");
  const double c = theorem3_c(config);
  if (!(c < 1.0)) {
    throw CalibrationInvalid(std::string(quantity) + ": c = " + std::to_string(c) +
                             " >= 1, the type-II bound is vacuous");
  }
  return c;
}

double group_log_term(const ProblemConfig& config, double extra_factor, const char* quantity) {
  const double s = static_cast<double>(config.s);
  const double arg = extra_factor * (2.0 * s - config.delta_prime) * zero_rows(config, quantity) /
                     (config.alpha_prime * config.delta_prime);
  const double log_term = std::log(arg);
  if (!(log_term > 0.0)) throw CalibrationInvalid(std::string(quantity) + ": log term <= 0");
  return log_term;
}

double group_signal(const ProblemConfig& config, double extra_factor, const char* quantity) {
  config.validate();
  const double c = checked_c(config, quantity);
  const double k = static_cast<double>(config.k);
  const double sigma = effective_sigma(config);
  return sigma * std::sqrt(2.0 * (std::sqrt(5.0) + 4.0)) *
         std::sqrt(std::pow(k, config.beta - 0.5) / (1.0 - c)) *
         std::sqrt(group_log_term(config, extra_factor, quantity));
}

}  // namespace

double lambda_lasso(const ProblemConfig& config) {
  config.validate();
  const double k = static_cast<double>(config.k);
  const double log_arg = 2.0 * k * zero_rows(config, "lambda_lasso") /
                         (std::sqrt(2.0 * std::numbers::pi) * config.alpha_prime);
  const double radicand = 2.0 * std::log(log_arg);
  if (!(radicand >= 1.0)) {
    throw CalibrationInvalid("lambda_lasso: 2 ln(2k(p-s)/(sqrt(2 pi) alpha')) < 1");
  }
  return effective_sigma(config) * std::sqrt(radicand);
}

double lambda_group_l2(const ProblemConfig& config) {
  config.validate();
  const double level = config.alpha_prime / zero_rows(config, "lambda_group_l2");
  const double sigma = effective_sigma(config);
  return chi_square_quantile(config.k, level) * sigma * sigma;
}

double lambda_group_linf(const ProblemConfig& config) {
  config.validate();
  const double k = static_cast<double>(config.k);
  const double log_arg = k * zero_rows(config, "lambda_linf") / config.alpha_prime;
  if (!(log_arg > 1.0)) throw CalibrationInvalid("lambda_linf: k(p-s)/alpha' <= 1");
  return k * effective_sigma(config) * std::sqrt(2.0 * std::log(log_arg));
}

double lasso_constant_c_kps(const ProblemConfig& config) {
  config.validate();
  if (config.k < 2) throw CalibrationInvalid("mu_lasso: requires k >= 2");
  const double numerator = std::log(2.0 * zero_rows(config, "mu_lasso") /
                                    (std::sqrt(2.0 * std::numbers::pi) * config.alpha_prime));
  const double c_kps = numerator / std::log(static_cast<double>(config.k));
  if (!std::isfinite(c_kps) || c_kps < -1.0) {
    throw CalibrationInvalid("mu_lasso: C_kps outside [-1, inf)");
  }
  return c_kps;
}

double lasso_rate_r(const ProblemConfig& config) {
  const double c_kps = lasso_constant_c_kps(config);
  const double gap = std::sqrt(1.0 + c_kps) - std::sqrt(1.0 - config.beta);
  return gap * gap;
}

double mu_lasso(const ProblemConfig& config) {
  const double r = lasso_rate_r(config);
  return std::sqrt(2.0 * (r + 0.001) * std::log(static_cast<double>(config.k))) *
         effective_sigma(config);
}

double mu_group(const ProblemConfig& config) { return group_signal(config, 1.0, "mu_group"); }

double mu_group_with_2e(const ProblemConfig& config) {
  return group_signal(config, 2.0 * std::numbers::e, "mu_group_with_2e");
}

double linf_tau(const ProblemConfig& config) {
  const double lambda = lambda_group_linf(config);
  if (config.s == 0) throw CalibrationInvalid("tau: requires s >= 1");
  const double s = static_cast<double>(config.s);
  const double log_term = std::log((2.0 * s - config.delta_prime) / config.delta_prime);
  return effective_sigma(config) * std::sqrt(2.0 * static_cast<double>(config.k) * log_term) /
         lambda;
}

double mu_linf(const ProblemConfig& config) {
  const double lambda = lambda_group_linf(config);
  const double c = checked_c(config, "mu_linf");
  const double tau = linf_tau(config);
  return (1.0 + tau) / (1.0 - c) * std::pow(static_cast<double>(config.k), config.beta - 1.0) *
         lambda;
}

CalibrationReport calibrate(const ProblemConfig& config) {
  CalibrationReport report;
  report.lambda_lasso = lambda_lasso(config);
  report.lambda_group_sq = lambda_group_l2(config);
  report.lambda_linf = lambda_group_linf(config);
  report.mu_lasso = mu_lasso(config);
  report.mu_group = mu_group(config);
  report.mu_linf = mu_linf(config);

  const double sigma = effective_sigma(config);
  report.intermediate["r"] = lasso_rate_r(config);
  report.intermediate["C_kps"] = lasso_constant_c_kps(config);
  report.intermediate["c"] = theorem3_c(config);
  report.intermediate["tau"] = linf_tau(config);
  report.intermediate["t_quantile"] = report.lambda_group_sq / (sigma * sigma);
  report.intermediate["mu_group_with_2e"] = mu_group_with_2e(config);

  const double k = static_cast<double>(config.k);
  report.lasso_large_k_regime =
      std::pow(k, 1.0 - config.beta) / 2.0 >=
      std::log(static_cast<double>(config.s) / config.delta_prime);
  return report;
}

}  // namespace mtsr
