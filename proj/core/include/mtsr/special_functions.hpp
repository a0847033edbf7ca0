#pragma once

#include <cstddef>

namespace mtsr {

/// P[N(0,1) > x], evaluated through erfc so the upper tail keeps full
/// relative precision far from the origin.
double normal_upper_tail(double x);

/// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
/// Series expansion below x = a + 1, modified-Lentz continued fraction above.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// P[chi^2_dof > t].
double chi_square_upper_tail(std::size_t dof, double t);

/// Smallest t with P[chi^2_dof > t] <= alpha, by bisection to an absolute
/// width of 1e-10. Throws std::invalid_argument unless 0 < alpha < 1.
double chi_square_quantile(std::size_t dof, double alpha);

}  // namespace mtsr
