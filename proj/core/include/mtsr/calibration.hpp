#pragma once

#include <map>
#include <string>

#include "mtsr/model.hpp"

namespace mtsr {

/// Analytic thresholds and signal scales for one problem configuration.
///
/// `intermediate` holds r and C_kps (lasso signal level), c and tau (the
/// Chernoff slack shared by both group procedures), t_quantile (chi-square
/// quantile before the sigma^2 factor) and mu_group_with_2e, the group signal
/// level with the extra 2e factor inside the logarithm.
struct CalibrationReport {
  double lambda_lasso = 0.0;
  double lambda_group_sq = 0.0;
  double lambda_linf = 0.0;
  double mu_lasso = 0.0;
  double mu_group = 0.0;
  double mu_linf = 0.0;
  std::map<std::string, double> intermediate;
  /// k^(1-beta)/2 >= ln(s/delta'): the finite-sample half of the lasso's
  /// "mu_min >= lambda" regime. The other half is asymptotic and not checked.
  bool lasso_large_k_regime = false;
};

/// sigma * sqrt(2 ln(2k(p-s) / (sqrt(2 pi) alpha'))). Throws
/// CalibrationInvalid when 2 ln(...) < 1 or p == s.
double lambda_lasso(const ProblemConfig& config);

/// chi_square_quantile(k, alpha'/(p-s)) * sigma^2, in squared units.
double lambda_group_l2(const ProblemConfig& config);

/// k * sigma * sqrt(2 ln(k(p-s)/alpha')).
double lambda_group_linf(const ProblemConfig& config);

/// C_kps = ln(2(p-s)/(sqrt(2 pi) alpha')) / ln k.
double lasso_constant_c_kps(const ProblemConfig& config);
/// r = (sqrt(1 + C_kps) - sqrt(1 - beta))^2.
double lasso_rate_r(const ProblemConfig& config);

/// sqrt(2 (r + 0.001) ln k) * sigma.
double mu_lasso(const ProblemConfig& config);

/// Group signal scale used for the simulation figures (no 2e factor).
/// Throws CalibrationInvalid when c >= 1.
double mu_group(const ProblemConfig& config);

/// Same bound with the 2e factor inside the logarithm.
double mu_group_with_2e(const ProblemConfig& config);

/// tau = sigma sqrt(2k ln((2s - delta')/delta')) / lambda_linf.
double linf_tau(const ProblemConfig& config);

/// (1 + tau)/(1 - c) * k^(beta - 1) * lambda_linf. Throws CalibrationInvalid
/// when c >= 1.
double mu_linf(const ProblemConfig& config);

/// Every quantity above; throws CalibrationInvalid if any one of them is
/// outside its domain, with the quantity named in the message.
CalibrationReport calibrate(const ProblemConfig& config);

}  // namespace mtsr
