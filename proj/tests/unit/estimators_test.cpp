#include <random>

#include <gtest/gtest.h>

#include "mtsr/estimators.hpp"

namespace mtsr {
namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix random_matrix(std::size_t p, std::size_t k, std::mt19937_64& gen) {
  std::normal_distribution<double> z(0.0, 1.0);
  Matrix m(p, k);
  for (double& v : m.data()) v = z(gen);
  return m;
}

TEST(Procedure, Names) {
  for (auto p : {Procedure::lasso, Procedure::group_l2, Procedure::group_linf,
                 Procedure::union_of_supports}) {
    EXPECT_EQ(procedure_from_string(to_string(p)), p);
  }
  EXPECT_EQ(to_string(Procedure::union_of_supports), "union");
  EXPECT_FALSE(procedure_from_string("ridge"));
}

TEST(SoftThreshold, Scalar) {
  EXPECT_DOUBLE_EQ(soft_threshold_scalar(3, 1), 2);
  EXPECT_DOUBLE_EQ(soft_threshold_scalar(-0.5, 1), 0);
  EXPECT_DOUBLE_EQ(soft_threshold_scalar(-2, 0.5), -1.5);
  EXPECT_DOUBLE_EQ(soft_threshold_scalar(0, 0), 0);
}

TEST(Lasso, Examples) {
  const Matrix zero(3, 2);
  EXPECT_TRUE(extract_support(estimate_lasso(zero, 1.0)).empty());
  EXPECT_TRUE(support_lasso(zero, 1.0).empty());

  const auto y = from_rows({{0.5, 2.0}});
  const auto est = estimate_lasso(y, 1.0);
  EXPECT_EQ(est.values(0, 0), 0.0);
  EXPECT_EQ(est.values(0, 1), 1.0);
  EXPECT_EQ(est.lambda_used, 1.0);
  EXPECT_EQ(support_lasso(y, 1.0), SupportSet(1, {0}));

  std::mt19937_64 gen(1);
  const auto noise = random_matrix(20, 5, gen);
  EXPECT_EQ(estimate_lasso(noise, 0.0).values, noise);
  EXPECT_EQ(extract_support(estimate_lasso(noise, 0.0)).size(), 20u);
}

TEST(GroupL2, Examples) {
  const auto y = from_rows({{3, 4}});
  auto est = estimate_group_l2(y, 25.0);
  EXPECT_EQ(support_group_l2(y, 25.0), SupportSet(1, {0}));
  EXPECT_DOUBLE_EQ(est.values(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(est.values(0, 1), 0.0);
  est = estimate_group_l2(y, 6.25);
  EXPECT_DOUBLE_EQ(est.values(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(est.values(0, 1), 2.0);
  EXPECT_TRUE(support_group_l2(Matrix(4, 3), 0.5).empty());
}

TEST(GroupLinf, Boundary) {
  const auto y = from_rows({{1, -2}});
  EXPECT_TRUE(support_group_linf(y, 3.0).empty());
  EXPECT_EQ(support_group_linf(y, 2.9), SupportSet(1, {0}));
  EXPECT_TRUE(support_group_linf(Matrix(3, 3), 0.0).empty());
}

TEST(Support, ExtractAndUnion) {
  Matrix m(5, 2);
  EXPECT_TRUE(extract_support({m, Procedure::lasso, 0.0}).empty());
  m(0, 1) = 1.0;
  m(3, 0) = -2.0;
  EXPECT_EQ(extract_support({m, Procedure::lasso, 0.0}), SupportSet(5, {0, 3}));

  const SupportSet a(6, {1, 2}), b(6, {2, 5});
  EXPECT_EQ(union_support(a, b), SupportSet(6, {1, 2, 5}));
  EXPECT_EQ(union_support(SupportSet(6), b), b);
  EXPECT_EQ(union_support(b, b), b);
  EXPECT_THROW(union_support(a, SupportSet(7)), std::invalid_argument);
}

TEST(Properties, ShrinkageInvariants) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto y = random_matrix(8, 6, gen);
    const double lambda = std::uniform_real_distribution<double>(0, 2.5)(gen);
    const auto lasso = estimate_lasso(y, lambda);
    for (std::size_t i = 0; i < y.rows(); ++i) {
      for (std::size_t j = 0; j < y.cols(); ++j) {
        const double v = lasso.values(i, j);
        EXPECT_LE(std::abs(v), std::abs(y(i, j)));
        EXPECT_TRUE(v == 0.0 || std::signbit(v) == std::signbit(y(i, j)));
      }
    }
    const double lambda_sq = lambda * lambda * 3;
    const auto group = estimate_group_l2(y, lambda_sq);
    for (std::size_t i = 0; i < y.rows(); ++i) {
      const double scale = group.values(i, 0) / y(i, 0);
      EXPECT_GE(scale, 0.0);
      EXPECT_LE(scale, 1.0);
      for (std::size_t j = 0; j < y.cols(); ++j) {
        EXPECT_NEAR(group.values(i, j), scale * y(i, j), 1e-12);
      }
    }
    // Rows left out of the support carry exactly zero coefficients.
    const auto s_lasso = support_lasso(y, lambda);
    for (std::size_t i = 0; i < y.rows(); ++i) {
      if (s_lasso.contains(i)) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) EXPECT_EQ(lasso.values(i, j), 0.0);
    }
  }
}

TEST(Properties, LambdaMonotonicity) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto y = random_matrix(12, 5, gen);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    double l1 = u(gen), l2 = u(gen);
    if (l1 > l2) std::swap(l1, l2);
    EXPECT_TRUE(support_lasso(y, l1).includes(support_lasso(y, l2)));
    EXPECT_TRUE(support_group_l2(y, 3 * l1 * l1).includes(support_group_l2(y, 3 * l2 * l2)));
    EXPECT_TRUE(support_group_linf(y, 2 * l1).includes(support_group_linf(y, 2 * l2)));
  }
}

TEST(Properties, UnionDominates) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto y = random_matrix(12, 5, gen);
    const double lambda = 1.5, lambda_sq = 9.0;
    const auto u = support_union(y, lambda, lambda_sq);
    EXPECT_TRUE(u.includes(support_lasso(y, lambda)));
    EXPECT_TRUE(u.includes(support_group_l2(y, lambda_sq)));
    EXPECT_EQ(u, union_support(support_lasso(y, lambda), support_group_l2(y, lambda_sq)));
  }
}

TEST(Properties, SupportRulesMatchEstimates) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto y = random_matrix(10, 4, gen);
    EXPECT_EQ(support_lasso(y, 1.8), extract_support(estimate_lasso(y, 1.8)));
    EXPECT_EQ(support_group_l2(y, 6.0), extract_support(estimate_group_l2(y, 6.0)));
  }
}

}  // namespace
}  // namespace mtsr
