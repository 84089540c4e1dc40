#include <cmath>

#include <gtest/gtest.h>

#include <channel/errors.hpp>
#include <channel/hill.hpp>

#include "oracles/fd_hill.hpp"
#include "oracles/reference.hpp"

using namespace channel;

TEST(Hill, FreeTwistedLaplacian) {
  const auto ev = hill_spectrum({}, 0.25, 32, 3);
  EXPECT_NEAR(ev[0], 0.0625, 1e-12);
  EXPECT_NEAR(ev[1], 0.5625, 1e-12);
  EXPECT_NEAR(ev[2], 1.5625, 1e-12);
  for (double theta : {-0.5, -0.1, 0.0, 0.37}) {
    const auto e = hill_spectrum({}, theta, 10, 15);
    std::vector<double> want;
    for (int m = -10; m <= 10; ++m) want.push_back((m + theta) * (m + theta));
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 15; ++i) EXPECT_NEAR(e[i], want[i], 1e-12);
  }
}

TEST(Hill, ConstantShift) {
  const FourierCoeffs c{{1, 1.0}, {-1, 1.0}};
  FourierCoeffs shifted = c;
  shifted[0] = 0.7;
  for (double theta : {0.0, 0.3}) {
    const auto a = hill_spectrum(c, theta, 32, 6);
    const auto b = hill_spectrum(shifted, theta, 32, 6);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(b[i] - a[i], 0.7, 1e-12);
  }
}

TEST(Hill, AgreesWithFiniteDifferences) {
  struct Sample {
    FourierCoeffs c;
    std::function<double(double)> v;
  };
  const std::vector<Sample> samples = {
      {{{1, 1.0}, {-1, 1.0}}, [](double x) { return 2 * std::cos(x); }},
      {{{1, 0.4}, {-1, 0.4}, {2, {0.0, -0.3}}, {-2, {0.0, 0.3}}},
       [](double x) { return 0.8 * std::cos(x) + 0.6 * std::sin(2 * x); }},
      {{{0, 0.2}, {3, 0.75}, {-3, 0.75}}, [](double x) { return 0.2 + 1.5 * std::cos(3 * x); }},
  };
  for (const auto& s : samples) {
    for (double theta : {0.0, 0.25, 0.5}) {
      const auto fourier = hill_spectrum(s.c, theta, 32, 5);
      const auto fd = oracle::fd_hill_richardson(s.v, theta, 2048, 5);
      for (int i = 0; i < 5; ++i) EXPECT_NEAR(fourier[i], fd[i], 1e-6) << theta << " " << i;
    }
  }
}

TEST(Hill, ReflectionSymmetry) {
  const FourierCoeffs c{{1, {0.5, 0.3}}, {-1, {0.5, -0.3}}, {2, 0.2}, {-2, 0.2}};
  for (double theta : {0.1, 0.27, 0.44}) {
    const auto a = hill_spectrum(c, theta, 32, 8);
    const auto b = hill_spectrum(c, -theta, 32, 8);
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(a[i], b[i], 1e-11);
  }
}

TEST(Hill, MathieuBandMonotoneOnHalfZone) {
  const FourierCoeffs c{{1, 1.0}, {-1, 1.0}};
  double prev0 = -INFINITY, prev1 = INFINITY;
  for (int i = 0; i <= 50; ++i) {
    const auto e = hill_spectrum(c, 0.5 * i / 50.0, 32, 2);
    EXPECT_GE(e[0], prev0 - 1e-13);
    EXPECT_LE(e[1], prev1 + 1e-13);
    prev0 = e[0];
    prev1 = e[1];
  }
}

TEST(Hill, RejectsBadTheta) {
  EXPECT_THROW(hill_spectrum({}, 0.7, 8, 1), ConfigError);
  EXPECT_THROW(hill_spectrum({}, 0.0, -1, 1), ConfigError);
}

TEST(H00, FreeHasNoGaps) {
  HillOptions o;
  o.theta_count = 17;
  EXPECT_EQ(h00_gaps(derive_params(3, 4), PotentialSpec::zero(), 15.0, o).count(), 0u);
  const auto bands = hill_bands({}, 10.0, o);
  for (std::size_t i = 0; i < bands.theta_grid.size(); ++i) {
    const double t = bands.theta_grid[i];
    std::vector<double> want;
    for (int m = -32; m <= 32; ++m) want.push_back((m + t) * (m + t));
    std::sort(want.begin(), want.end());
    for (std::size_t j = 0; j < bands.energies[i].size(); ++j) EXPECT_NEAR(bands.energies[i][j], want[j], 1e-12);
  }
}

TEST(H00, MathieuGapEdges) {
  const auto p = derive_params(3.0, 4.0);
  const auto r = h00_gaps(p, PotentialSpec::cosine(2.0), 3 * p.alpha);
  ASSERT_GE(r.count(), 1u);
  // Band edges of the lowest Mathieu gap sit at theta = 1/2.
  const auto fd = oracle::fd_hill_richardson([](double x) { return 2 * std::cos(x); }, 0.5, 2048, 2);
  EXPECT_NEAR(r.gaps[0].lo, p.alpha + fd[0], 1e-6);
  EXPECT_NEAR(r.gaps[0].hi, p.alpha + fd[1], 1e-6);
  EXPECT_NEAR(r.bottom, p.alpha + oracle::fd_hill_richardson([](double x) { return 2 * std::cos(x); }, 0.0, 2048, 1)[0],
              1e-6);
}

TEST(H00, TransverseProfileReducesGap) {
  const auto p = derive_params(3.0, 4.0);
  const PotentialSpec damped(XPeriodicFourier{{{1, 1.0}, {-1, 1.0}}, YProfile::gaussian(1.0, std::sqrt(0.5))});
  const auto proj = project_potential(damped, p, 0, 8);
  const double overlap = oracle::hermite_matrix_element(0, 0, [&](double s) { return std::exp(-s * s / p.alpha); });
  EXPECT_NEAR(overlap, 1.0 / std::sqrt(1.0 + 1.0 / p.alpha), 1e-10);
  EXPECT_NEAR(projected_coeffs(proj, 0).at(1).real(), overlap, 1e-12);

  const auto full = h00_gaps(p, PotentialSpec::cosine(2.0), 3 * p.alpha);
  const auto reduced = h00_gaps(p, damped, 3 * p.alpha);
  ASSERT_GE(reduced.count(), 1u);
  EXPECT_LT(reduced.gaps[0].width(), full.gaps[0].width());
  const double a = 2 * overlap;
  const auto fd = oracle::fd_hill_richardson([&](double x) { return a * std::cos(x); }, 0.5, 2048, 2);
  EXPECT_NEAR(reduced.gaps[0].lo, p.alpha + fd[0], 1e-6);
  EXPECT_NEAR(reduced.gaps[0].hi, p.alpha + fd[1], 1e-6);
}
