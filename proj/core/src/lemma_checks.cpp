#include "mtsr/lemma_checks.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mtsr/special_functions.hpp"
#include "mtsr/theory.hpp"

namespace mtsr {

double binomial_cdf(std::size_t k, double pi, long long m) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("binomial_cdf: pi in [0,1]");
  if (m < 0) return 0.0;
  if (static_cast<std::size_t>(m) >= k) return 1.0;
  if (pi == 0.0) return 1.0;
  if (pi == 1.0) return 0.0;
  const long double kk = static_cast<long double>(k);
  const long double log_p = std::log(static_cast<long double>(pi));
  const long double log_q = std::log1p(-static_cast<long double>(pi));
  long double total = 0.0L;
  for (long long j = 0; j <= m; ++j) {
    const long double jj = static_cast<long double>(j);
    const long double log_pmf = std::lgamma(kk + 1.0L) - std::lgamma(jj + 1.0L) -
                                std::lgamma(kk - jj + 1.0L) + jj * log_p + (kk - jj) * log_q;
    total += std::exp(log_pmf);
  }
  return static_cast<double>(std::min(total, 1.0L));
}

CheckResult check_gaussian_tail_bound() {
  CheckResult r{"gaussian_tail_bound", true, 0, {}};
  std::ostringstream detail;
  for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const double tail = 2.0 * normal_upper_tail(lambda);
    const double bound =
        2.0 / (std::sqrt(2.0 * std::numbers::pi) * lambda) * std::exp(-lambda * lambda / 2.0);
    ++r.cases;
    if (!(tail <= bound)) {
      r.passed = false;
      detail << "lambda=" << lambda << " tail=" << tail << " bound=" << bound << "; ";
    }
  }
  r.detail = detail.str();
  return r;
}

CheckResult check_binomial_zero_bound() {
  CheckResult r{"binomial_zero_bound", true, 0, {}};
  std::ostringstream detail;
  for (std::size_t k = 1; k <= 200; ++k) {
    for (int step = 1; step <= 999; ++step) {
      const double pi = step / 1000.0;
      const auto z = binomial_zero_prob(k, pi);
      ++r.cases;
      if (!(z.exact <= z.bound)) {
        r.passed = false;
        detail << "k=" << k << " pi=" << pi << "; ";
      }
    }
  }
  r.detail = detail.str();
  return r;
}

CheckResult check_chernoff_bounds() {
  CheckResult r{"chernoff_bounds", true, 0, {}};
  std::ostringstream detail;
  for (std::size_t k : {10, 50, 100, 500, 1000}) {
    for (double pi : {0.01, 0.1, 0.3, 0.5, 0.9}) {
      const double mean = static_cast<double>(k) * pi;
      const double sd = std::sqrt(mean * (1.0 - pi));
      for (double multiple : {0.5, 1.0, 2.0, 3.0}) {
        const double t = multiple * sd;
        const auto bounds = chernoff_lower_tail(k, pi, t);
        // P[z <= mean - t] and P[z >= mean + t].
        const double lower_exact =
            binomial_cdf(k, pi, static_cast<long long>(std::floor(mean - t)));
        const double upper_exact =
            1.0 - binomial_cdf(k, pi, static_cast<long long>(std::ceil(mean + t)) - 1);
        ++r.cases;
        if (!(lower_exact <= bounds.lower_tail) || !(upper_exact <= bounds.upper_tail)) {
          r.passed = false;
          detail << "k=" << k << " pi=" << pi << " t=" << t << " lower " << lower_exact << "/"
                 << bounds.lower_tail << " upper " << upper_exact << "/" << bounds.upper_tail
                 << "; ";
        }
      }
    }
  }
  r.detail = detail.str();
  return r;
}

CheckResult check_chi_square_round_trip() {
  CheckResult r{"chi_square_round_trip", true, 0, {}};
  std::ostringstream detail;
  for (std::size_t dof : {1, 2, 5, 10, 100}) {
    for (double alpha : {0.2, 0.05, 1e-4}) {
      const double t = chi_square_quantile(dof, alpha);
      const double err = std::abs(chi_square_upper_tail(dof, t) - alpha);
      ++r.cases;
      if (!(err <= 1e-8)) {
        r.passed = false;
        detail << "dof=" << dof << " alpha=" << alpha << " err=" << err << "; ";
      }
    }
  }
  r.detail = detail.str();
  return r;
}

std::vector<CheckResult> run_lemma_suite() {
  return {check_gaussian_tail_bound(), check_binomial_zero_bound(), check_chernoff_bounds(),
          check_chi_square_round_trip()};
}

}  // namespace mtsr
