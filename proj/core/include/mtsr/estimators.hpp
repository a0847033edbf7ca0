#pragma once

#include <optional>
#include <string_view>

#include "mtsr/matrix.hpp"
#include "mtsr/model.hpp"

namespace mtsr {

enum class Procedure { lasso, group_l2, group_linf, union_of_supports };

/// "lasso", "group_l2", "group_linf", "union".
std::string_view to_string(Procedure procedure) noexcept;
std::optional<Procedure> procedure_from_string(std::string_view name) noexcept;

/// Closed-form penalized least-squares estimate. For lasso `lambda_used` is
/// the entrywise threshold; for group_l2 it is lambda_sq (squared units), and
/// the row shrinkage radius is sqrt(lambda_sq). The l1/l-infinity procedure
/// has no coefficient output, only a support rule.
struct MeanEstimate {
  Matrix values;
  Procedure procedure = Procedure::lasso;
  double lambda_used = 0.0;
};

/// (1 - lambda/|y|)_+ * y, and 0 at y == 0.
double soft_threshold_scalar(double y, double lambda);

MeanEstimate estimate_lasso(const Matrix& y, double lambda);
MeanEstimate estimate_group_l2(const Matrix& y, double lambda_sq);

/// Rows whose max statistic max_j |Y_ij| is >= lambda.
SupportSet support_lasso(const Matrix& y, double lambda);

/// Rows whose chi-square statistic sum_j Y_ij^2 is >= lambda_sq.
SupportSet support_group_l2(const Matrix& y, double lambda_sq);

/// Rows with sum_j |Y_ij| > lambda; a row is zeroed by the l1/l-infinity
/// penalty exactly when its l1 norm is <= lambda.
SupportSet support_group_linf(const Matrix& y, double lambda);

/// Lasso support united with the group-l2 support.
SupportSet support_union(const Matrix& y, double lambda_lasso, double lambda_group_sq);

/// Rows holding at least one exactly non-zero entry.
SupportSet extract_support(const MeanEstimate& estimate);

/// Throws std::invalid_argument when the universes differ.
SupportSet union_support(const SupportSet& a, const SupportSet& b);

}  // namespace mtsr
