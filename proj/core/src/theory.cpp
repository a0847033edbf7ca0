#include "mtsr/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "mtsr/special_functions.hpp"

namespace mtsr {

LowerBoundReport mu_lower_bound(const ProblemConfig& config, double alpha) {
  config.validate();
  const double k = static_cast<double>(config.k);
  const double rows = static_cast<double>(config.p - config.s) + 1.0;
  LowerBoundReport out;
  out.alpha = alpha;
  out.u = std::log1p(alpha * alpha * rows / 2.0) / (2.0 * std::pow(k, 1.0 - 2.0 * config.beta));
  const double u = out.u;
  const double sigma = effective_sigma(config);
  out.mu_min = std::sqrt(std::log1p(u + std::sqrt(2.0 * u + u * u))) * sigma;
  out.valid = alpha > 0.0 && alpha < 0.5 && std::pow(k, -config.beta) * u < 1.0;
  return out;
}

double pi_k(double mu, double epsilon, double sigma, double lambda) {
  if (!(sigma > 0.0)) throw std::invalid_argument("pi_k: sigma must be positive");
  if (lambda <= 0.0) return 1.0;
  const double null_part = 2.0 * normal_upper_tail(lambda / sigma);
  const double signal_part =
      normal_upper_tail((lambda - mu) / sigma) + normal_upper_tail((lambda + mu) / sigma);
  return (1.0 - epsilon) * null_part + epsilon * signal_part;
}

BinomialZeroProbability binomial_zero_prob(std::size_t k, double pi) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("binomial_zero_prob: pi in [0,1]");
  const double kd = static_cast<double>(k);
  return {std::pow(1.0 - pi, kd), std::exp(-kd * pi)};
}

ChernoffBounds chernoff_lower_tail(std::size_t k, double pi, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("chernoff_lower_tail: t must be >= 0");
  const double mean = static_cast<double>(k) * pi;
  ChernoffBounds out;
  if (t == 0.0) return out;
  out.lower_tail = mean > 0.0 ? std::exp(-t * t / (2.0 * mean)) : 0.0;
  out.upper_tail = std::exp(-t * t / (2.0 * (mean + t / 3.0)));
  return out;
}

double theorem3_c(const ProblemConfig& config) {
  if (config.s == 0) throw std::invalid_argument("theorem3_c: requires s >= 1");
  if (!(config.delta_prime > 0.0 && config.delta_prime < 1.0)) {
    throw std::invalid_argument("theorem3_c: delta' must lie in (0, 1)");
  }
  const double s = static_cast<double>(config.s);
  const double k = static_cast<double>(config.k);
  return std::sqrt(2.0 * std::log(2.0 * s / config.delta_prime) / std::pow(k, 1.0 - config.beta));
}

}  // namespace mtsr
