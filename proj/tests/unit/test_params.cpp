#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include <channel/errors.hpp>
#include <channel/params.hpp>

using namespace channel;

TEST(Params, DerivedConstants) {
  const auto p = derive_params(3.0, 4.0);
  EXPECT_DOUBLE_EQ(p.alpha, 5.0);
  EXPECT_DOUBLE_EQ(p.beta, 0.64);
  EXPECT_DOUBLE_EQ(p.mu, 0.12);

  const auto q = derive_params(0.0, 1.0);
  EXPECT_DOUBLE_EQ(q.alpha, 1.0);
  EXPECT_DOUBLE_EQ(q.beta, 1.0);
  EXPECT_DOUBLE_EQ(q.mu, 0.0);

  const auto r = derive_params(1.0, 1.0);
  EXPECT_NEAR(r.alpha, 1.41421356, 1e-8);
  EXPECT_NEAR(r.beta, 0.5, 1e-15);
  EXPECT_NEAR(r.mu, 0.5, 1e-15);
}

TEST(Params, Invariants) {
  for (double B : {0.0, 0.3, 1.0, 7.5, 100.0}) {
    for (double w : {0.1, 1.0, 4.0, 40.0}) {
      const auto p = derive_params(B, w);
      EXPECT_NEAR(p.alpha * p.alpha, B * B + w * w, 1e-13 * (B * B + w * w));
      EXPECT_GT(p.beta, 0.0);
      EXPECT_LE(p.beta, 1.0);
      EXPECT_EQ(p.beta == 1.0, B == 0.0);
      EXPECT_NEAR(p.mu * p.alpha * p.alpha, B, 1e-13 * (1 + B));
    }
  }
}

TEST(Params, ScaleConsistency) {
  const auto p = derive_params(3.0, 4.0);
  for (double lambda : {0.5, 2.0, 3.7}) {
    const double s = 1.0 / (lambda * lambda);
    const auto q = derive_params(s * 3.0, s * 4.0);
    EXPECT_NEAR(q.alpha, s * p.alpha, 1e-14);
    EXPECT_NEAR(q.beta, p.beta, 1e-14);
    EXPECT_NEAR(q.mu * q.alpha * q.alpha / q.B, p.mu * p.alpha * p.alpha / p.B, 1e-14);
  }
}

TEST(Params, RejectsBadInput) {
  EXPECT_THROW(derive_params(1.0, 0.0), ConfigError);
  EXPECT_THROW(derive_params(1.0, -2.0), ConfigError);
  EXPECT_THROW(derive_params(-1.0, 1.0), ConfigError);
  EXPECT_THROW(derive_params(std::numeric_limits<double>::quiet_NaN(), 1.0), ConfigError);
  EXPECT_THROW(derive_params(1.0, std::numeric_limits<double>::infinity()), ConfigError);
}
