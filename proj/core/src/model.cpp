#include "mtsr/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "mtsr/errors.hpp"
#include "mtsr/rng.hpp"

namespace mtsr {
namespace {

constexpr std::uint64_t kNoiseStream = 0;
constexpr std::uint64_t kActivationStream = 1;

template <class RowSink>
void draw_rows(const ProblemConfig& config, double mu_value, std::uint64_t seed, RowSink&& sink) {
  config.validate();
  if (!(mu_value >= 0.0) || !std::isfinite(mu_value)) {
    throw std::invalid_argument("mu_value must be finite and non-negative");
  }
  const double sigma = effective_sigma(config);
  boost::random::normal_distribution<double> standard_normal(0.0, 1.0);

  for (std::size_t i = 0; i < config.p; ++i) {
    const bool in_support = i < config.s;
    CounterEngine activation(derive_key({seed, i, kActivationStream}));
    CounterEngine noise(derive_key({seed, i, kNoiseStream}));
    for (std::size_t j = 0; j < config.k; ++j) {
      unsigned char xi = 0;
      if (in_support) {
        xi = to_unit_interval(activation()) < config.epsilon ? 1 : 0;
      }
      const double mean = xi ? mu_value : 0.0;
      sink(i, j, xi, mean, mean + sigma * standard_normal(noise));
    }
  }
}

}  // namespace

ProblemConfig ProblemConfig::from_beta(std::size_t p, std::size_t k, std::size_t s, std::size_t n,
                                       double sigma0, double beta, double alpha_prime,
                                       double delta_prime) {
  ProblemConfig c;
  c.p = p;
  c.k = k;
  c.s = s;
  c.n = n;
  c.sigma0 = sigma0;
  c.beta = beta;
  c.epsilon = std::pow(static_cast<double>(k), -beta);
  c.alpha_prime = alpha_prime;
  c.delta_prime = delta_prime;
  return c;
}

void ProblemConfig::validate() const {
  if (p == 0) throw ConfigError("p", "must be positive");
  if (k == 0) throw ConfigError("k", "must be positive");
  if (s > p) throw ConfigError("s", "must satisfy 0 <= s <= p");
  if (n == 0) throw ConfigError("n", "must be positive");
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw ConfigError("sigma0", "must be positive");
  if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("beta", "must lie in [0, 1)");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon", "must lie in (0, 1]");
  if (!(alpha_prime > 0.0 && alpha_prime < 1.0)) {
    throw ConfigError("alpha_prime", "must lie in (0, 1)");
  }
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    throw ConfigError("delta_prime", "must lie in (0, 1)");
  }
}

double effective_sigma(const ProblemConfig& config) {
  return config.sigma0 / std::sqrt(static_cast<double>(config.n));
}

SupportSet::SupportSet(std::size_t universe, std::vector<std::size_t> indices)
    : universe_(universe), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && indices_.back() >= universe_) {
    throw std::invalid_argument("support index " + std::to_string(indices_.back()) +
                                " out of range for p = " + std::to_string(universe_));
  }
}

SupportSet SupportSet::first_rows(std::size_t universe, std::size_t count) {
  if (count > universe) throw std::invalid_argument("support larger than universe");
  SupportSet out(universe);
  out.indices_.resize(count);
  for (std::size_t i = 0; i < count; ++i) out.indices_[i] = i;
  return out;
}

bool SupportSet::contains(std::size_t row) const {
  return std::binary_search(indices_.begin(), indices_.end(), row);
}

bool SupportSet::includes(const SupportSet& other) const {
  return std::includes(indices_.begin(), indices_.end(), other.indices_.begin(),
                       other.indices_.end());
}

void SupportSet::push_back_sorted(std::size_t row) {
  assert(row < universe_ && (indices_.empty() || indices_.back() < row));
  indices_.push_back(row);
}

Instance generate_instance(const ProblemConfig& config, double mu_value, std::uint64_t seed) {
  Instance out;
  out.means = Matrix(config.p, config.k);
  out.activations = BinaryMatrix(config.p, config.k);
  out.observations = Matrix(config.p, config.k);
  out.seed = seed;
  draw_rows(config, mu_value, seed,
            [&](std::size_t i, std::size_t j, unsigned char xi, double mean, double y) {
              out.activations(i, j) = xi;
              out.means(i, j) = mean;
              out.observations(i, j) = y;
            });
  out.support = SupportSet::first_rows(config.p, config.s);
  return out;
}

void generate_observations(const ProblemConfig& config, double mu_value, std::uint64_t seed,
                           Matrix& observations) {
  observations.resize(config.p, config.k);
  double* out = observations.data().data();
  const std::size_t cols = config.k;
  draw_rows(config, mu_value, seed,
            [out, cols](std::size_t i, std::size_t j, unsigned char, double, double y) {
              out[i * cols + j] = y;
            });
}

std::vector<std::size_t> row_activation_counts(const Instance& instance) {
  const auto& xi = instance.activations;
  std::vector<std::size_t> counts(xi.rows(), 0);
  for (std::size_t i = 0; i < xi.rows(); ++i) {
    const auto means = instance.means.row(i);
    const auto active = xi.row(i);
    for (std::size_t j = 0; j < active.size(); ++j) counts[i] += active[j] && means[j] != 0.0;
  }
  return counts;
}

}  // namespace mtsr
