#include <cmath>

#include <gtest/gtest.h>

#include "mtsr/calibration.hpp"
#include "mtsr/errors.hpp"
#include "mtsr/special_functions.hpp"

namespace mtsr {
namespace {

// p = 128, k = 896, s = 7 throughout unless stated; n = 1 gives sigma = sigma0.
ProblemConfig base(double beta = 0.0, double sigma0 = 1.0, std::size_t n = 1) {
  return ProblemConfig::from_beta(128, 896, 7, n, sigma0, beta, 0.01, 0.01);
}

TEST(LambdaLasso, OracleAndScaling) {
  EXPECT_NEAR(lambda_lasso(base()), 5.6520986884368952064, 1e-12);
  EXPECT_DOUBLE_EQ(lambda_lasso(base(0.0, 2.0)), 2.0 * lambda_lasso(base()));
}

TEST(LambdaLasso, ForcedUnitValue) {
  // 2k(p-s)/(sqrt(2 pi) alpha') = e^(1/2) gives lambda = sigma.
  auto c = ProblemConfig::from_beta(2, 1, 1, 1, 1.0, 0.0, 0.01, 0.01);
  c.alpha_prime = 2.0 / (std::sqrt(2 * M_PI) * std::exp(0.5));
  EXPECT_NEAR(lambda_lasso(c), 1.0, 1e-12);
  c.alpha_prime = 0.9;  // argument below e^(1/2)
  EXPECT_THROW(lambda_lasso(c), CalibrationInvalid);
}

TEST(LambdaGroup, Examples) {
  // k = 2 and alpha'/(p - s) = 0.5/10 = 0.05: the dof-2 closed form -2 ln(0.05).
  const auto c = ProblemConfig::from_beta(11, 2, 1, 1, 1.0, 0.0, 0.5, 0.01);
  EXPECT_NEAR(lambda_group_l2(c), 5.9914645471079819869, 1e-6);

  EXPECT_NEAR(lambda_group_l2(base(0.0, 2.0)), 4.0 * lambda_group_l2(base()), 1e-7);
  EXPECT_NEAR(lambda_group_l2(base()), chi_square_quantile(896, 0.01 / 121), 1e-12);
}

TEST(LambdaLinf, Examples) {
  EXPECT_NEAR(lambda_group_linf(base()), 5099.9484352826334501, 1e-8);
  auto c = base();
  c.k = 1;
  EXPECT_NEAR(lambda_group_linf(c), std::sqrt(2 * std::log(121 / 0.01)), 1e-12);
  auto d = base();
  d.k = 2 * 896;
  EXPECT_GT(lambda_group_linf(d), 2 * lambda_group_linf(base()));
}

TEST(MuLasso, Oracle) {
  const auto c = base(0.75, 1.0, 12);
  EXPECT_NEAR(lasso_constant_c_kps(c), 1.3496984118054141772, 1e-12);
  EXPECT_NEAR(lasso_rate_r(c), 1.0668258105089417321, 1e-12);
  EXPECT_NEAR(mu_lasso(c), 1.0999254695414931619, 1e-12);
  EXPECT_DOUBLE_EQ(mu_lasso(base(0.75, 2.0, 12)), 2.0 * mu_lasso(c));
}

TEST(MuLasso, ZeroConstant) {
  // p - s = sqrt(2 pi) alpha' / 2 makes C_kps = 0, so r = 0 at beta = 0.
  auto c = base();
  c.p = 8;
  c.s = 7;
  c.alpha_prime = 2.0 / std::sqrt(2 * M_PI);
  EXPECT_NEAR(lasso_constant_c_kps(c), 0.0, 1e-15);
  EXPECT_NEAR(lasso_rate_r(c), 0.0, 1e-15);
  EXPECT_NEAR(mu_lasso(c), std::sqrt(0.002 * std::log(896.0)), 1e-12);
}

TEST(MuGroup, Oracle) {
  const auto c = base(0.0, 1.0, 12);
  EXPECT_NEAR(mu_group(c), 0.81371248710590657763, 1e-12);
  EXPECT_NEAR(mu_group_with_2e(c), 0.85409748271664717717, 1e-12);
  EXPECT_NEAR(mu_linf(c), 1.9245477800505593987, 1e-10);
  EXPECT_NEAR(linf_tau(c), 0.022339725829175009613, 1e-13);
}

TEST(MuGroup, IncreasingInBeta) {
  double previous = 0.0;
  for (double beta : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
    const double mu = mu_group(base(beta));
    EXPECT_GT(mu, previous);
    previous = mu;
  }
}

TEST(MuGroup, HalfBetaDependsOnKOnlyThroughC) {
  auto a = base(0.5);
  auto b = base(0.5);
  b.k = 4 * 896;
  b.epsilon = std::pow(b.k, -0.5);
  const auto factor = [](const ProblemConfig& c) {
    double ck = std::sqrt(2 * std::log(2 * 7 / 0.01) / std::pow(c.k, 0.5));
    return 1.0 / std::sqrt(1 - ck);
  };
  EXPECT_NEAR(mu_group(a) / factor(a), mu_group(b) / factor(b), 1e-12);
}

TEST(MuLinf, Limit) {
  // With c -> 0 and tau -> 0, mu_linf -> k^(beta-1) lambda_linf; tau and c are
  // both positive so the limit is a strict lower bound.
  const auto c = base(0.0, 1.0, 12);
  EXPECT_GT(mu_linf(c), lambda_group_linf(c) / 896.0);
}

TEST(MuLinf, RatioToLassoGrowsWithBeta) {
  // k large enough that c < 1 across the whole grid.
  double previous = 0.0;
  for (double beta : {0.0, 0.25, 0.5, 0.75}) {
    auto c = ProblemConfig::from_beta(128, 200000, 7, 12, 1.0, beta, 0.01, 0.01);
    const double ratio = mu_linf(c) / mu_lasso(c);
    EXPECT_GT(ratio, previous) << "beta=" << beta;
    previous = ratio;
  }
}

TEST(Calibrate, ReportAndInvalidCells) {
  const auto report = calibrate(base(0.0, 1.0, 12));
  EXPECT_NEAR(report.intermediate.at("c"), 0.12716190744272344138, 1e-13);
  EXPECT_EQ(report.intermediate.count("r"), 1u);
  EXPECT_EQ(report.intermediate.count("t_quantile"), 1u);
  EXPECT_DOUBLE_EQ(report.mu_group, mu_group(base(0.0, 1.0, 12)));
  EXPECT_TRUE(report.lasso_large_k_regime);
  for (double v : {report.lambda_lasso, report.lambda_group_sq, report.lambda_linf,
                   report.mu_lasso, report.mu_group, report.mu_linf}) {
    EXPECT_TRUE(std::isfinite(v) && v > 0);
  }

  // beta = 0.75 at k = 896 puts c above 1.
  EXPECT_THROW(mu_group(base(0.75)), CalibrationInvalid);
  EXPECT_THROW(calibrate(base(0.75)), CalibrationInvalid);
  EXPECT_NO_THROW(mu_lasso(base(0.75)));
}

TEST(Calibrate, LinearInSigma) {
  const auto a = calibrate(base(0.2, 1.0));
  const auto b = calibrate(base(0.2, 2.0));
  EXPECT_NEAR(b.lambda_lasso, 2 * a.lambda_lasso, 1e-12);
  EXPECT_NEAR(b.lambda_linf, 2 * a.lambda_linf, 1e-9);
  EXPECT_NEAR(b.lambda_group_sq, 4 * a.lambda_group_sq, 1e-7);
  EXPECT_NEAR(b.mu_lasso, 2 * a.mu_lasso, 1e-12);
  EXPECT_NEAR(b.mu_group, 2 * a.mu_group, 1e-12);
  EXPECT_NEAR(b.mu_linf, 2 * a.mu_linf, 1e-9);
}

}  // namespace
}  // namespace mtsr
