#pragma once

#include <array>
#include <complex>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace channel {

/// Variable order (x1, x2, p1, p2) with [x_j, p_k] = i delta_jk.
enum Var { X1 = 0, X2 = 1, P1 = 2, P2 = 3 };

/// sum_ab Q_ab sym(v_a v_b) + sum_a l_a v_a + c, sym = Weyl (symmetric) ordering.
struct QuadraticObservable {
  Eigen::Matrix4d quad = Eigen::Matrix4d::Zero();
  Eigen::Vector4d lin = Eigen::Vector4d::Zero();
  double constant = 0.0;

  /// Adds coeff * sym(v_a v_b), splitting off-diagonal terms symmetrically.
  QuadraticObservable& add(Var a, Var b, double coeff);
  QuadraticObservable& add(Var a, double coeff);

  /// Coefficient of the monomial sym(v_a v_b) (2 Q_ab off the diagonal).
  double monomial(Var a, Var b) const { return a == b ? quad(a, a) : 2.0 * quad(a, b); }
};

/// Normal-ordered polynomial: x1^a x2^b p1^c p2^d -> coefficient.
class Polynomial {
 public:
  using Monomial = std::array<int, 4>;

  Polynomial() = default;
  static Polynomial variable(Var v);
  static Polynomial scalar(std::complex<double> c);

  const std::map<Monomial, std::complex<double>>& terms() const { return terms_; }
  int degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(std::complex<double> s) const;

  /// Drops coefficients below tol.
  Polynomial pruned(double tol = 0.0) const;

 private:
  void add_term(const Monomial& m, std::complex<double> c);
  std::map<Monomial, std::complex<double>> terms_;
};

Polynomial to_polynomial(const QuadraticObservable& q);
/// Throws ConfigError for degree > 2 or non-real Weyl coefficients.
QuadraticObservable from_polynomial(const Polynomial& p, double tol = 1e-12);

/// [H, iA] via the operator product in normal order.
QuadraticObservable commutator_iA(const QuadraticObservable& H, const QuadraticObservable& A);

/// -{H, A}: the Poisson bracket route, exact for quadratics.
QuadraticObservable poisson_commutator_iA(const QuadraticObservable& H, const QuadraticObservable& A);

/// (p1 + B x2)^2 + p2^2 + omega^2 x2^2 written with alpha^2 = B^2 + omega^2.
QuadraticObservable free_channel_hamiltonian(double B, double alpha);

/// sym(x1 p1) + mu p1 p2.
QuadraticObservable conjugate_operator(double mu);

struct Positivity {
  bool zero = false;
  bool positive_semidefinite = false;
  bool definite_on_support = false;  ///< positive definite restricted to nonzero rows
  double min_eigenvalue = 0.0;
};

/// Quadratic part only; entries below tol count as zero.
Positivity quadratic_positivity(const QuadraticObservable& q, double tol = 1e-12);

double max_abs_difference(const QuadraticObservable& a, const QuadraticObservable& b);

/// Parameters of the general quadratic A (linear terms dropped): alpha_jk, beta_jk, gamma_jk.
/// A = -sum alpha_jk p_j p_k - sum 2 beta_jk sym(x_k p_j) + sum gamma_jk x_j x_k.
struct GeneralConjugate {
  double a11 = 0, a12 = 0, a22 = 0;
  double b11 = 0, b12 = 0, b21 = 0, b22 = 0;
  double g11 = 0, g12 = 0, g22 = 0;
};
QuadraticObservable general_conjugate(const GeneralConjugate& g);

/// Names of the ten Weyl monomials in table order: x1x1, x1x2, x1p1, x1p2, x2x2, x2p1, x2p2, p1p1, p1p2, p2p2.
const std::vector<std::string>& monomial_names();
/// Parameter names with beta_11 excluded: a11 a12 a22 b12 b21 b22 g11 g12 g22.
const std::vector<std::string>& nogo_parameter_names();

struct NogoResult {
  std::string verdict;  ///< "no-go", "positive" or "inconclusive"
  double B = 0.0;
  double alpha = 0.0;
  /// table(r, j): coefficient of monomial r in [H0, iA] per unit of parameter j.
  Eigen::MatrixXd table;
  /// Linear constraints forced by positivity (rows), and a basis of what is left free (columns).
  Eigen::MatrixXd constraints;
  Eigen::MatrixXd free_basis;
  /// Monomials that survive the constraints, with their coefficients as linear forms in the parameters.
  std::vector<std::pair<std::string, Eigen::RowVectorXd>> residual;

  /// True when the constraints force parameter `name` to vanish.
  bool forced_zero(const std::string& name, double tol = 1e-10) const;
  /// Linear form over the parameters as text, e.g. "12 a22 - 4 b12 - 4 b21".
  static std::string format_form(const Eigen::RowVectorXd& form);
};

/// Symbolic scan over A with beta_11 = 0: imposes positivity-driven vanishing
/// conditions until nothing changes and reports the residual quadratic form.
NogoResult gen_nogo_scan(double B, double alpha);

/// Aligned text and CSV renderings of the coefficient table.
void write_table_text(std::ostream& out, const NogoResult& r);
void write_table_csv(std::ostream& out, const NogoResult& r);
void write_observable_csv(std::ostream& out, const QuadraticObservable& q);

}  // namespace channel
