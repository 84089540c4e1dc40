#pragma once

#include <vector>

namespace channel {

inline constexpr int kMaxHermiteIndex = 1000;

/// Orthonormal Hermite function phi_n(s) = C_n exp(-s^2/2) H_n(s),
/// C_n = pi^{-1/4} (2^n n!)^{-1/2}, evaluated by the normalized three-term
/// recurrence with exponent tracking (no factorials, no underflow of phi_0).
double hermite_eval(int n, double s);

/// phi_0(s) .. phi_nmax(s).
std::vector<double> hermite_values(int nmax, double s);

/// C_n. Underflows to 0 for n beyond ~300; use hermite_eval for values.
double hermite_normalization(int n);

/// Gauss-Hermite rule of order q. weights are the modified weights v_i with
/// integral F(s) ds ~ sum_i v_i F(s_i), exact when F = exp(-s^2) * poly of
/// degree <= 2q-1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch nodes polished by Newton steps on phi_q, weights from the
/// Christoffel function v_i = 1 / sum_{k<q} phi_k(s_i)^2.
GaussHermiteRule gauss_hermite(int q);

/// Hermite functions tabulated on a quadrature rule.
class HermiteBasis {
 public:
  /// Default order follows the 2 nmax + 16 rule.
  explicit HermiteBasis(int nmax, int quadrature_order = 0);

  int nmax() const { return nmax_; }
  int order() const { return static_cast<int>(rule_.nodes.size()); }
  const GaussHermiteRule& rule() const { return rule_; }
  /// phi_n(s_i).
  double value(int n, int i) const { return table_[static_cast<std::size_t>(n) * rule_.nodes.size() + i]; }
  /// sqrt(v_i) phi_n(s_i); rows of this matrix are orthonormal vectors.
  double scaled(int n, int i) const { return scaled_[static_cast<std::size_t>(n) * rule_.nodes.size() + i]; }

 private:
  int nmax_;
  GaussHermiteRule rule_;
  std::vector<double> table_;
  std::vector<double> scaled_;
};

}  // namespace channel
