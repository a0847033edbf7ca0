#pragma once

#include <cstddef>

#include "mtsr/model.hpp"

namespace mtsr {

/// Minimax lower bound on the smallest non-zero mean.
struct LowerBoundReport {
  double mu_min = 0.0;
  double u = 0.0;
  bool valid = false;
  double alpha = 0.0;
};

/// u = ln(1 + alpha^2 (p - s + 1)/2) / (2 k^(1 - 2 beta)),
/// mu_min^2 = ln(1 + u + sqrt(2u + u^2)) sigma^2.
/// `valid` is true iff alpha in (0, 1/2) and k^(-beta) u < 1; the numbers are
/// filled in either way.
LowerBoundReport mu_lower_bound(const ProblemConfig& config, double alpha);

/// P[|X| > lambda] for X drawn from the mixture (1-eps) N(0, sigma^2) + eps N(mu, sigma^2).
double pi_k(double mu, double epsilon, double sigma, double lambda);

struct BinomialZeroProbability {
  double exact = 1.0;  ///< (1 - pi)^k
  double bound = 1.0;  ///< exp(-k pi)
};
BinomialZeroProbability binomial_zero_prob(std::size_t k, double pi);

struct ChernoffBounds {
  double lower_tail = 1.0;  ///< bound on P[z <= k pi - t]: exp(-t^2 / (2 k pi))
  double upper_tail = 1.0;  ///< bound on P[z >= k pi + t]: exp(-t^2 / (2 (k pi + t/3)))
};
ChernoffBounds chernoff_lower_tail(std::size_t k, double pi, double t);

/// c = sqrt(2 ln(2s/delta') / k^(1 - beta)). Requires s >= 1.
double theorem3_c(const ProblemConfig& config);

}  // namespace mtsr
