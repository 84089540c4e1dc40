#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <channel/classical.hpp>
#include <channel/errors.hpp>

#include "oracles/reference.hpp"

using namespace channel;

namespace {

const ChannelParams kP = derive_params(3.0, 4.0);
const auto kNoForce = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };

}  // namespace

TEST(Classical, ClosedFormExample) {
  const ClassicalState s0{0, 0, 0, 1, 0};
  for (double t : {0.0, 0.13, 0.5, 1.0, 2.7}) {
    const auto s = closed_form_solution(kP, s0, t);
    EXPECT_NEAR(s.x, 1.28 * t + 0.072 * std::sin(10 * t), 1e-14);
    EXPECT_NEAR(s.y, 0.12 * (std::cos(10 * t) - 1), 1e-14);
    EXPECT_NEAR(s.py, -0.6 * std::sin(10 * t), 1e-14);
    EXPECT_EQ(s.px, 1.0);
    EXPECT_NEAR(guiding_center(kP, s)[0], 1.28 * t, 1e-14);
  }
  const auto ref = oracle::dopri_flow(3, 4, kNoForce, {0, 0, 1, 0}, 1.0);
  const auto s = closed_form_solution(kP, s0, 1.0);
  EXPECT_NEAR(s.x, ref[0], 1e-8);
  EXPECT_NEAR(s.y, ref[1], 1e-8);
  EXPECT_NEAR(s.py, ref[3], 1e-8);
}

TEST(Classical, ClosedFormGeneralInitialData) {
  for (auto z : {std::array<double, 4>{0.3, -0.4, 0.7, 1.1}, {-2.0, 1.5, -1.3, -0.2}}) {
    for (auto [B, w] : {std::pair{3.0, 4.0}, {0.0, 1.0}, {2.0, 0.5}}) {
      const auto p = derive_params(B, w);
      const auto s = closed_form_solution(p, {0, z[0], z[1], z[2], z[3]}, 1.7);
      const auto ref = oracle::dopri_flow(B, w, kNoForce, z, 1.7);
      EXPECT_NEAR(s.x, ref[0], 1e-8);
      EXPECT_NEAR(s.y, ref[1], 1e-8);
      EXPECT_NEAR(s.px, ref[2], 1e-12);
      EXPECT_NEAR(s.py, ref[3], 1e-8);
    }
  }
}

TEST(Classical, ZeroMomentumClosesEllipse) {
  const ClassicalState s0{0, 0.5, 0.3, 0.0, 0.2};
  const auto traj = closed_form_trajectory(kP, s0, 3.0, 0.01);
  const double sx0 = guiding_center(kP, s0)[0];
  for (const auto& s : traj.states) EXPECT_NEAR(guiding_center(kP, s)[0], sx0, 1e-13);
  const double period = std::numbers::pi / kP.alpha;
  const auto back = closed_form_solution(kP, s0, period);
  EXPECT_NEAR(back.x, s0.x, 1e-13);
  EXPECT_NEAR(back.y, s0.y, 1e-13);
}

TEST(Classical, ConservedQuantitiesAndEllipse) {
  const ClassicalState s0{0, 0.2, -0.6, 1.4, 0.8};
  const auto traj = closed_form_trajectory(kP, s0, 5.0, 0.01);
  const auto ellipse = [&](const ClassicalState& s) {
    const auto c = guiding_center(kP, s);
    return kP.alpha * kP.alpha * std::pow(s.y - c[1], 2) + std::pow((s.x - c[0]) / kP.mu, 2);
  };
  const double q0 = ellipse(s0);
  for (const auto& s : traj.states) {
    EXPECT_EQ(s.px, s0.px);
    EXPECT_EQ(guiding_center(kP, s)[1], -kP.mu * s0.px);
    EXPECT_NEAR(ellipse(s), q0, 1e-10 * q0);
    EXPECT_NEAR(guiding_center(kP, s)[0] - guiding_center(kP, s0)[0], 2 * kP.beta * s0.px * s.t, 1e-12);
  }
  EXPECT_LT(traj.energy_drift, 1e-14);
}

TEST(Classical, IntegratorMatchesClosedForm) {
  const ClassicalState s0{0, 0, 0, 1, 0};
  const auto rk = integrate(kP, PotentialSpec::zero(), s0, 1.0, 1e-3);
  const auto exact = closed_form_trajectory(kP, s0, 1.0, 1e-3);
  ASSERT_EQ(rk.states.size(), exact.states.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < rk.states.size(); ++i)
    worst = std::max({worst, std::abs(rk.states[i].x - exact.states[i].x), std::abs(rk.states[i].y - exact.states[i].y)});
  EXPECT_LT(worst, 1e-8);
  EXPECT_LT(rk.energy_drift, 1e-9);
  EXPECT_FALSE(rk.aborted);
  EXPECT_DOUBLE_EQ(rk.states.back().t, 1.0);
}

TEST(Classical, IntegratorIsFourthOrder) {
  const ClassicalState s0{0, 0.1, 0.2, 1.0, -0.3};
  const auto exact = closed_form_solution(kP, s0, 1.0);
  const auto err = [&](double dt) {
    const auto s = integrate(kP, PotentialSpec::zero(), s0, 1.0, dt).states.back();
    return std::hypot(s.x - exact.x, s.y - exact.y, s.py - exact.py);
  };
  const double ratio = err(0.02) / err(0.01);
  EXPECT_GT(ratio, 13.0);
  EXPECT_LT(ratio, 19.0);
}

TEST(Classical, BumpOnChannelAxis) {
  const GaussianBump b{0.5, 5.0, 0.0, 1.0};
  const PotentialSpec spec(LocalizedBumps{{b}});
  const ClassicalState s0{0, 0, 0, 3.0, 0};
  const auto rk = integrate(kP, spec, s0, 3.0, 1e-3);
  EXPECT_LT(rk.energy_drift, 1e-8);
  const auto grad = [&](double x, double y) {
    const double e = b.amplitude * std::exp(-((x - b.x) * (x - b.x) + y * y) / 2.0);
    return std::array<double, 2>{-(x - b.x) * e, -y * e};
  };
  const auto ref = oracle::dopri_flow(3, 4, grad, {0, 0, 3, 0}, 3.0);
  EXPECT_NEAR(rk.states.back().x, ref[0], 1e-7);
  EXPECT_NEAR(rk.states.back().y, ref[1], 1e-7);
  EXPECT_NEAR(rk.states.back().px, ref[2], 1e-7);
  // the guiding centre has passed the bump and is displaced relative to free drift
  const double free_sx = 2 * kP.beta * 3.0 * 3.0;
  const double sx = guiding_center(kP, rk.states.back())[0];
  EXPECT_GT(sx, b.x + 2.0);
  EXPECT_GT(std::abs(sx - free_sx), 1e-4);
}

TEST(Classical, BlowUpGuard) {
  const auto traj = integrate(kP, PotentialSpec::zero(), {0, 0, 0, 4e8, 0}, 10.0, 0.01);
  EXPECT_TRUE(traj.aborted);
  EXPECT_FALSE(traj.abort_reason.empty());
  EXPECT_LT(traj.states.back().t, 10.0);
  EXPECT_GT(traj.states.size(), 1u);
}

TEST(Classical, MourreSlope) {
  const auto closed = mourre_observable(closed_form_trajectory(kP, {0, 0, 0, 1, 0}, 1.0, 1e-3));
  EXPECT_NEAR(closed.slope, 1.28, 1e-10);
  EXPECT_DOUBLE_EQ(mourre_slope_exact(kP, 1.0), 1.28);
  const auto rk = mourre_observable(integrate(kP, PotentialSpec::zero(), {0, 0, 0, 1, 0}, 1.0, 1e-3));
  EXPECT_NEAR(rk.slope, 1.28, 1e-6);
  EXPECT_NEAR(mourre_observable(closed_form_trajectory(kP, {0, 0.4, 0.1, 0, 0.3}, 1.0, 1e-3)).slope, 0.0, 1e-14);
  EXPECT_NEAR(mourre_observable(closed_form_trajectory(kP, {0, 0, 0, -2, 0}, 1.0, 1e-3)).slope, 5.12, 1e-10);
}

TEST(Classical, Errors) {
  EXPECT_THROW(closed_form_solution(kP, PotentialSpec::cosine(1.0), {}, 1.0), ConfigError);
  EXPECT_THROW(integrate(kP, PotentialSpec::zero(), {}, 1.0, 0.0), ConfigError);
  EXPECT_THROW(closed_form_trajectory(kP, {}, -1.0, 0.1), ConfigError);
}
