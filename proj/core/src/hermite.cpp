#include "channel/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "channel/errors.hpp"

namespace channel {
namespace {

constexpr double kRescale = 1e150;

void check_index(int n) {
  if (n < 0) throw ConfigError("Hermite index must be non-negative");
  if (n > kMaxHermiteIndex) {
    throw ConfigError("Hermite index " + std::to_string(n) + " exceeds the supported maximum 1000");
  }
}

// Runs the recurrence up to nmax, calling sink(k, phi_k(s)).
template <class Sink>
void run_recurrence(int nmax, double s, Sink&& sink) {
  double log_scale = -0.5 * s * s - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0;
  double cur = 1.0;
  sink(0, std::exp(log_scale));
  for (int k = 0; k < nmax; ++k) {
    const double kk = static_cast<double>(k);
    const double next = std::sqrt(2.0 / (kk + 1.0)) * s * cur - std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += std::log(kRescale);
    }
    // exp(log_scale) alone may underflow while the product is representable.
    const double mag = std::abs(cur);
    sink(k + 1, mag == 0.0 ? 0.0 : std::copysign(std::exp(std::log(mag) + log_scale), cur));
  }
}

}  // namespace

double hermite_eval(int n, double s) {
  check_index(n);
  double out = 0.0;
  run_recurrence(n, s, [&](int k, double v) {
    if (k == n) out = v;
  });
  return out;
}

std::vector<double> hermite_values(int nmax, double s) {
  check_index(nmax);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  run_recurrence(nmax, s, [&](int k, double v) { out[static_cast<std::size_t>(k)] = v; });
  return out;
}

double hermite_normalization(int n) {
  check_index(n);
  const double log_c = -0.25 * std::log(std::numbers::pi) -
                       0.5 * (n * std::log(2.0) + std::lgamma(static_cast<double>(n) + 1.0));
  return std::exp(log_c);
}

GaussHermiteRule gauss_hermite(int q) {
  if (q < 1) throw ConfigError("Gauss-Hermite order must be at least 1");
  check_index(q);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(q);
  Eigen::VectorXd sub(std::max(q - 1, 0));
  for (int k = 1; k < q; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalFailure("Gauss-Hermite Jacobi eigensolve failed");

  GaussHermiteRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    double s = solver.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const auto phi = hermite_values(q, s);
      const double f = phi[q];
      const double df = std::sqrt(2.0 * q) * phi[q - 1] - s * f;
      if (df == 0.0) break;
      const double step = f / df;
      s -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(s))) break;
    }
    const auto phi = hermite_values(q - 1, s);
    double sum = 0.0;
    for (double v : phi) sum += v * v;
    rule.nodes[i] = s;
    rule.weights[i] = 1.0 / sum;
  }
  // Exact symmetry of the rule.
  for (int i = 0; i < q / 2; ++i) {
    const int j = q - 1 - i;
    const double s = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -s;
    rule.nodes[j] = s;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

HermiteBasis::HermiteBasis(int nmax, int quadrature_order) : nmax_(nmax) {
  check_index(nmax);
  const int q = quadrature_order > 0 ? quadrature_order : 2 * nmax + 16;
  if (q < nmax + 1) throw ConfigError("quadrature order must be at least nmax + 1");
  rule_ = gauss_hermite(q);
  const std::size_t nq = rule_.nodes.size();
  table_.resize(static_cast<std::size_t>(nmax + 1) * nq);
  scaled_.resize(table_.size());
  for (std::size_t i = 0; i < nq; ++i) {
    const auto phi = hermite_values(nmax, rule_.nodes[i]);
    const double sw = std::sqrt(rule_.weights[i]);
    for (int n = 0; n <= nmax; ++n) {
      table_[static_cast<std::size_t>(n) * nq + i] = phi[n];
      scaled_[static_cast<std::size_t>(n) * nq + i] = sw * phi[n];
    }
  }
}

}  // namespace channel
