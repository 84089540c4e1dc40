#include "channel/mourre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "channel/band_sampler.hpp"
#include "channel/errors.hpp"

namespace channel {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Intervals of I(alpha, half_width) meeting (-inf, ceiling], overlap allowed.
std::vector<Interval> landau_neighbourhoods(double alpha, double half_width, double ceiling) {
  std::vector<Interval> out;
  for (int n = 0;; ++n) {
    const double centre = (2 * n + 1) * alpha;
    if (centre - half_width > ceiling) break;
    out.push_back({centre - half_width, centre + half_width, false, false});
  }
  return out;
}

bool inside_any(double e, const std::vector<Interval>& intervals) {
  return std::any_of(intervals.begin(), intervals.end(), [e](const Interval& iv) { return e >= iv.lo && e <= iv.hi; });
}

}  // namespace

std::vector<Interval> excluded_intervals(const ChannelParams& params, double delta, double ceiling) {
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(delta < params.alpha)) throw ConfigError("delta must be smaller than alpha");
  return landau_neighbourhoods(params.alpha, delta, ceiling);
}

double mourre_constant(const ChannelParams& params, double c) {
  return c * (1.0 + params.alpha * params.alpha) / (params.omega * params.omega);
}

double condition_one_threshold(const ChannelParams& params, double E, double delta, double eps, double c) {
  const double bc = params.beta * mourre_constant(params, c);
  return delta / (2.0 * (delta / params.alpha + bc) * (1.0 + E / eps));
}

double condition_two_lhs(const ChannelParams& params, double w0, double w0_prime, double E, double c) {
  if (std::isinf(w0_prime)) return kInf;
  const double coupling = params.B / (params.alpha * params.alpha) * std::sqrt(c * mourre_constant(params, c));
  const double w_term = w0 == 0.0 ? 0.0 : coupling * w0 * (E + w0);
  return w0_prime + w_term;
}

std::vector<Interval> certified_set(double lower, double E, const std::vector<Interval>& excluded) {
  std::vector<Interval> out;
  if (E < lower) return out;
  std::vector<Interval> sorted = excluded;
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double cur = lower;
  bool cur_open = false;
  for (const auto& iv : sorted) {
    if (iv.hi < cur || (iv.hi == cur && cur_open)) continue;
    if (iv.lo > E) break;
    if (iv.lo > cur) out.push_back({cur, iv.lo, cur_open, true});
    if (iv.hi >= cur) {
      cur = iv.hi;
      cur_open = true;
    }
    if (cur >= E) return out;
  }
  if (cur < E || (cur == E && !cur_open)) out.push_back({cur, E, cur_open, false});
  return out;
}

MourreReport evaluate_certificate(const ChannelParams& params, double w0, double w0_prime, double E, double delta,
                                  double eps, double c) {
  if (!(delta > 0.0) || !(eps > 0.0)) throw ConfigError("delta and eps must be positive");
  if (!std::isfinite(E)) throw ConfigError("E must be finite");
  MourreReport r;
  r.params = params;
  r.E = E;
  r.delta = delta;
  r.eps = eps;
  r.c = c;
  r.C = mourre_constant(params, c);
  r.w0 = w0;
  r.w0_prime = w0_prime;
  r.excluded = landau_neighbourhoods(params.alpha, delta + eps, E);
  r.intervals_disjoint = delta + eps < params.alpha;
  r.condition_one_threshold = condition_one_threshold(params, E, delta, eps, c);
  r.condition_one = w0 < r.condition_one_threshold;
  r.condition_two_lhs = condition_two_lhs(params, w0, w0_prime, E, c);
  r.condition_two_rhs = 0.5 * delta;
  r.condition_two = r.condition_two_lhs < r.condition_two_rhs;
  r.w0_below_alpha = w0 < params.alpha;
  r.energy_outside_excluded = !inside_any(E, r.excluded);
  r.spectrum_lower_bound = params.alpha - w0;
  r.certified_set = certified_set(r.spectrum_lower_bound, E, r.excluded);

  if (std::isinf(w0_prime)) r.reasons.emplace_back("localization condition (a) violated");
  if (!r.w0_below_alpha) r.reasons.emplace_back("W0 >= alpha violates condition (a)");
  if (!r.energy_outside_excluded) r.reasons.emplace_back("E lies in I(alpha, delta + eps)");
  if (!r.intervals_disjoint) r.reasons.emplace_back("delta + eps >= alpha: excluded intervals overlap");
  if (!r.condition_one) r.reasons.emplace_back("condition (I) fails");
  if (!r.condition_two && !std::isinf(w0_prime)) r.reasons.emplace_back("condition (II) fails");
  double total = 0.0;
  for (const auto& iv : r.certified_set) total += iv.length();
  if (total <= 0.0) r.reasons.emplace_back("certified set is empty");
  r.admissible = r.reasons.empty();
  return r;
}

MourreReport evaluate_certificate(const ChannelParams& params, const PotentialSpec& spec, double E, double delta,
                                  double eps, double c) {
  return evaluate_certificate(params, spec.norms().w0, spec.norms().w0_prime, E, delta, eps, c);
}

ScalingResult scaling_sweep(double B, double E0, double delta0, double eps0, const PotentialSpec& spec,
                            const std::vector<double>& omegas, double c, int workers) {
  ScalingResult out;
  out.rows.resize(omegas.size());
  const double w0 = spec.norms().w0;
  const double w0p = spec.norms().w0_prime;
  parallel_for(omegas.size(), workers, [&](std::size_t i) {
    ScalingRow& row = out.rows[i];
    row.omega = omegas[i];
    row.params = derive_params(B, omegas[i]);
    const double a = row.params.alpha;
    row.E = E0 * a;
    row.delta = delta0 * a;
    row.eps = eps0 * a;
    const auto rep = evaluate_certificate(row.params, w0, w0p, row.E, row.delta, row.eps, c);
    row.condition_one_threshold = rep.condition_one_threshold;
    row.w0_prime_threshold = 0.5 * row.delta - condition_two_lhs(row.params, w0, 0.0, row.E, c);
    row.condition_two_slack = rep.condition_two_rhs - rep.condition_two_lhs;
    row.energy_outside_excluded = rep.energy_outside_excluded;
    row.admissible = rep.admissible;
  });
  out.thresholds_increasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (!(out.rows[i].condition_one_threshold > out.rows[i - 1].condition_one_threshold) ||
        !(out.rows[i].w0_prime_threshold > out.rows[i - 1].w0_prime_threshold)) {
      out.thresholds_increasing = false;
    }
  }
  for (const auto& row : out.rows) {
    if (row.admissible) {
      out.first_admissible_omega = row.omega;
      break;
    }
  }
  return out;
}

AppendixCheck appendix_norm_checks(const ChannelParams& params, double lambda, int N, int M, double c) {
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
  if (N < 2 || M < 0) throw ConfigError("appendix check needs N >= 2 and M >= 0");
  AppendixCheck out;
  const double a2 = params.alpha * params.alpha;
  const double w2 = params.omega * params.omega;
  const double disc = std::sqrt((1.0 + a2) * (1.0 + a2) - 4.0 * w2);
  out.lambda_plus = 0.5 * (1.0 + a2 + disc);
  out.lambda_minus = 0.5 * (1.0 + a2 - disc);
  out.lambda_minus_floor = w2 / (1.0 + a2);
  Eigen::Matrix2d v;
  v << 1.0, params.B, params.B, a2;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(v, Eigen::EigenvaluesOnly);
  out.eigen_formula_error =
      std::max(std::abs(es.eigenvalues()(0) - out.lambda_minus), std::abs(es.eigenvalues()(1) - out.lambda_plus));
  out.lambda_bound_holds = out.lambda_minus >= out.lambda_minus_floor * (1.0 - 1e-12);

  // Hermite-basis matrices of s and d/ds, built on N + 6 modes so that
  // products of two ladder operators are exact on the first N columns.
  const int ext = N + 6;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(ext, ext);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(ext, ext);
  for (int k = 0; k + 1 < ext; ++k) {
    const double r = std::sqrt(0.5 * (k + 1));
    s(k, k + 1) = s(k + 1, k) = r;
    d(k, k + 1) = r;   // d/ds phi_{k+1} contains +sqrt((k+1)/2) phi_k
    d(k + 1, k) = -r;  // d/ds phi_k contains -sqrt((k+1)/2) phi_{k+1}
  }
  const int rows = N + 4;
  const double sa = std::sqrt(params.alpha);
  const Eigen::MatrixXd y = (s / sa).topLeftCorner(rows, N);
  const Eigen::MatrixXd y2 = ((s * s) / params.alpha).topLeftCorner(rows, N);
  const Eigen::MatrixXd dy = (d * sa).topLeftCorner(rows, N);
  const Eigen::MatrixXd d2y = ((d * d) * params.alpha).topLeftCorner(rows, N);
  const auto norm = [](const Eigen::MatrixXd& m) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
  };

  constexpr int kThetas = 9;
  for (int m = -M; m <= M; ++m) {
    for (int t = 0; t < kThetas; ++t) {
      const double p = m - 0.5 + static_cast<double>(t) / kThetas;
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N, N);
      for (int n = 0; n < N; ++n) {
        h(n, n) = params.alpha * (2 * n + 1) + p * p + lambda;
        if (n + 1 < N) h(n, n + 1) = h(n + 1, n) = 2.0 * params.B * p * y(n, n + 1);
      }
      const Eigen::MatrixXd r = h.inverse();
      out.d2y = std::max(out.d2y, norm(d2y * r));
      out.d2x = std::max(out.d2x, p * p * norm(r));
      out.ydx = std::max(out.ydx, 2.0 * std::abs(p) * norm(y * r));
      out.y2 = std::max(out.y2, norm(y2 * r));
      out.dxdy = std::max(out.dxdy, std::abs(p) * norm(dy * r));
    }
  }
  const double ratio = (1.0 + a2) / w2;
  const double slack = 1.0 + 1e-6;
  out.bound_i = c;
  out.bound_ii = c * ratio;
  out.bound_iii = c * std::sqrt(ratio);
  if (out.d2y > out.bound_i * slack) out.violations.emplace_back("(i) ||d_y^2 R||");
  if (out.d2x > out.bound_ii * slack) out.violations.emplace_back("(ii) ||d_x^2 R||");
  if (out.ydx > out.bound_ii * slack) out.violations.emplace_back("(ii) 2 ||y d_x R||");
  if (out.y2 > out.bound_ii * slack) out.violations.emplace_back("(ii) ||y^2 R||");
  if (out.dxdy > out.bound_iii * slack) out.violations.emplace_back("(iii) ||d_x d_y R||");
  if (!out.lambda_bound_holds) out.violations.emplace_back("lambda_- >= omega^2 / (1 + alpha^2)");
  if (out.eigen_formula_error > 1e-9 * out.lambda_plus) out.violations.emplace_back("lambda_+- formula");
  out.pass = out.violations.empty();
  return out;
}

}  // namespace channel
