#include "mtsr/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace mtsr {
namespace {

void require_nonnegative(double lambda, const char* name) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be non-negative");
  }
}

double row_sum_squares(std::span<const double> row) {
  double acc = 0.0;
  for (double v : row) acc += v * v;
  return acc;
}

double row_sum_abs(std::span<const double> row) {
  double acc = 0.0;
  for (double v : row) acc += std::abs(v);
  return acc;
}

template <class Keep>
SupportSet rows_where(const Matrix& y, Keep&& keep) {
  SupportSet out(y.rows());
  for (std::size_t i = 0; i < y.rows(); ++i) {
    if (keep(y.row(i))) out.push_back_sorted(i);
  }
  return out;
}

}  // namespace

std::string_view to_string(Procedure procedure) noexcept {
  switch (procedure) {
    case Procedure::lasso:
      return "lasso";
    case Procedure::group_l2:
      return "group_l2";
    case Procedure::group_linf:
      return "group_linf";
    case Procedure::union_of_supports:
      return "union";
  }
  return "unknown";
}

std::optional<Procedure> procedure_from_string(std::string_view name) noexcept {
  for (auto p : {Procedure::lasso, Procedure::group_l2, Procedure::group_linf,
                 Procedure::union_of_supports}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

double soft_threshold_scalar(double y, double lambda) {
  require_nonnegative(lambda, "lambda");
  const double magnitude = std::abs(y);
  if (magnitude <= lambda) return 0.0;
  // (1 - lambda/|y|) * y == y - lambda * sign(y); the latter is exact for
  // representable inputs.
  return y > 0.0 ? y - lambda : y + lambda;
}

MeanEstimate estimate_lasso(const Matrix& y, double lambda) {
  require_nonnegative(lambda, "lambda");
  MeanEstimate out{Matrix(y.rows(), y.cols()), Procedure::lasso, lambda};
  auto src = y.data();
  auto dst = out.values.data();
  std::transform(src.begin(), src.end(), dst.begin(),
                 [lambda](double v) { return soft_threshold_scalar(v, lambda); });
  return out;
}

MeanEstimate estimate_group_l2(const Matrix& y, double lambda_sq) {
  require_nonnegative(lambda_sq, "lambda_sq");
  MeanEstimate out{Matrix(y.rows(), y.cols()), Procedure::group_l2, lambda_sq};
  const double radius = std::sqrt(lambda_sq);
  for (std::size_t i = 0; i < y.rows(); ++i) {
    const auto row = y.row(i);
    const double statistic = row_sum_squares(row);
    if (statistic < lambda_sq) continue;
    const double norm = std::sqrt(statistic);
    if (norm <= radius) continue;
    const double shrink = 1.0 - radius / norm;
    auto dst = out.values.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) dst[j] = shrink * row[j];
  }
  return out;
}

SupportSet support_lasso(const Matrix& y, double lambda) {
  require_nonnegative(lambda, "lambda");
  return rows_where(y, [lambda](std::span<const double> row) {
    // Early exit keeps the sweep cheap on signal rows.
    for (double v : row) {
      if (std::abs(v) >= lambda) return true;
    }
    return false;
  });
}

SupportSet support_group_l2(const Matrix& y, double lambda_sq) {
  require_nonnegative(lambda_sq, "lambda_sq");
  return rows_where(y, [lambda_sq](std::span<const double> row) {
    return row_sum_squares(row) >= lambda_sq;
  });
}

SupportSet support_group_linf(const Matrix& y, double lambda) {
  require_nonnegative(lambda, "lambda");
  return rows_where(y, [lambda](std::span<const double> row) { return row_sum_abs(row) > lambda; });
}

SupportSet support_union(const Matrix& y, double lambda_lasso, double lambda_group_sq) {
  return union_support(support_lasso(y, lambda_lasso), support_group_l2(y, lambda_group_sq));
}

SupportSet extract_support(const MeanEstimate& estimate) {
  return rows_where(estimate.values, [](std::span<const double> row) {
    return std::any_of(row.begin(), row.end(), [](double v) { return v != 0.0; });
  });
}

SupportSet union_support(const SupportSet& a, const SupportSet& b) {
  if (a.universe() != b.universe()) {
    throw std::invalid_argument("union_support: supports over different p");
  }
  SupportSet out(a.universe());
  std::vector<std::size_t> merged;
  merged.reserve(a.size() + b.size());
  std::set_union(a.indices().begin(), a.indices().end(), b.indices().begin(), b.indices().end(),
                 std::back_inserter(merged));
  for (std::size_t row : merged) out.push_back_sorted(row);
  return out;
}

}  // namespace mtsr
