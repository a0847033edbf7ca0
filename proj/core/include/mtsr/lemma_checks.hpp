#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mtsr {

/// P[Bin(k, pi) <= m] by direct summation of the probability mass function
/// in extended precision. Intended for k up to a few thousand.
double binomial_cdf(std::size_t k, double pi, long long m);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;
};

/// Gaussian tail bound 2 P[N(0,1) > l] <= 2/(sqrt(2 pi) l) exp(-l^2/2) on l in {0.5, 1, 2, 4}.
CheckResult check_gaussian_tail_bound();
/// (1 - pi)^k <= exp(-k pi) on k = 1..200, pi = 0.001..0.999.
CheckResult check_binomial_zero_bound();
/// Exact binomial tails against both Chernoff bounds on a 100-point (k, pi, t) grid, k <= 1000.
CheckResult check_chernoff_bounds();
/// |P[chi^2_dof > t(alpha)] - alpha| <= 1e-8 for dof in {1,2,5,10,100}, alpha in {0.2, 0.05, 1e-4}.
CheckResult check_chi_square_round_trip();

std::vector<CheckResult> run_lemma_suite();

}  // namespace mtsr
