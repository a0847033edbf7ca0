#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mtsr/matrix.hpp"

namespace mtsr {

/// Scalar parameters of one normal-means instance.
///
/// Rows are features (p of them, s non-zero), columns are tasks (k). Each
/// entry of a non-zero row is active with probability `epsilon`; the
/// observation noise has standard deviation sigma0 / sqrt(n).
struct ProblemConfig {
  std::size_t p = 1;
  std::size_t k = 1;
  std::size_t s = 0;
  std::size_t n = 1;
  double sigma0 = 1.0;
  double beta = 0.0;
  double epsilon = 1.0;
  double alpha_prime = 0.01;
  double delta_prime = 0.01;

  /// Uses the convention epsilon = k^(-beta).
  static ProblemConfig from_beta(std::size_t p, std::size_t k, std::size_t s, std::size_t n,
                                 double sigma0, double beta, double alpha_prime,
                                 double delta_prime);

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  /// alpha = alpha' + delta', the total error budget.
  double total_alpha() const noexcept { return alpha_prime + delta_prime; }

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

double effective_sigma(const ProblemConfig& config);

/// Strictly increasing row indices drawn from [0, universe).
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::size_t universe) : universe_(universe) {}

  /// Sorts and deduplicates; throws std::invalid_argument for indices >= universe.
  SupportSet(std::size_t universe, std::vector<std::size_t> indices);

  static SupportSet first_rows(std::size_t universe, std::size_t count);

  std::size_t universe() const noexcept { return universe_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t row) const;
  bool includes(const SupportSet& other) const;

  /// Appends a row; callers must keep the order strictly increasing.
  void push_back_sorted(std::size_t row);

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::size_t> indices_;
};

struct Instance {
  Matrix means;
  SupportSet support;
  BinaryMatrix activations;
  Matrix observations;
  std::uint64_t seed = 0;
};

/// Draws M, xi and Y. The support is the first s rows; every entry of a
/// support row has mean xi_ij * mu_value with xi_ij ~ Bernoulli(epsilon),
/// and every entry carries N(0, sigma^2) noise. Each row owns two
/// counter-based streams keyed by (seed, row), so the result is bit-identical
/// for equal inputs regardless of threading.
Instance generate_instance(const ProblemConfig& config, double mu_value, std::uint64_t seed);

/// Same draws as generate_instance but writes only Y into a caller-owned
/// buffer. Used by the sweep harness to avoid per-run allocations.
void generate_observations(const ProblemConfig& config, double mu_value, std::uint64_t seed,
                           Matrix& observations);

/// Per-row number of active entries carrying a non-zero mean; all zero when
/// the instance was drawn with mu_value = 0.
std::vector<std::size_t> row_activation_counts(const Instance& instance);

}  // namespace mtsr
