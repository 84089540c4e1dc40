#include "channel/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "channel/errors.hpp"

namespace channel {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// p^b x^c = sum_k k! C(b,k) C(c,k) (-i)^k x^{c-k} p^{b-k}.
cd reorder_coeff(int b, int c, int k) { return factorial(k) * binomial(b, k) * binomial(c, k) * std::pow(-kI, k); }

const char* kVarNames[4] = {"x1", "x2", "p1", "p2"};

Polynomial::Monomial unit(Var v) {
  Polynomial::Monomial m{0, 0, 0, 0};
  m[v] = 1;
  return m;
}

Eigen::Matrix4d symplectic() {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j(0, 2) = j(1, 3) = 1.0;
  j(2, 0) = j(3, 1) = -1.0;
  return j;
}

// (a, b) pairs of the ten Weyl monomials, table order.
const std::array<std::pair<Var, Var>, 10>& monomial_pairs() {
  static const std::array<std::pair<Var, Var>, 10> pairs = {{{X1, X1}, {X1, X2}, {X1, P1}, {X1, P2}, {X2, X2},
                                                             {X2, P1}, {X2, P2}, {P1, P1}, {P1, P2}, {P2, P2}}};
  return pairs;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& c, int dim) {
  if (c.rows() == 0) return Eigen::MatrixXd::Identity(dim, dim);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > tol ? 1 : 0;
  return svd.matrixV().rightCols(dim - rank);
}

}  // namespace

QuadraticObservable& QuadraticObservable::add(Var a, Var b, double coeff) {
  if (a == b) {
    quad(a, a) += coeff;
  } else {
    quad(a, b) += 0.5 * coeff;
    quad(b, a) += 0.5 * coeff;
  }
  return *this;
}

QuadraticObservable& QuadraticObservable::add(Var a, double coeff) {
  lin(a) += coeff;
  return *this;
}

Polynomial Polynomial::variable(Var v) {
  Polynomial p;
  p.terms_[unit(v)] = 1.0;
  return p;
}

Polynomial Polynomial::scalar(cd c) {
  Polynomial p;
  if (c != 0.0) p.terms_[{0, 0, 0, 0}] = c;
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    if (c != 0.0) d = std::max(d, m[0] + m[1] + m[2] + m[3]);
  }
  return d;
}

void Polynomial::add_term(const Monomial& m, cd c) {
  auto& slot = terms_[m];
  slot += c;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * cd(-1.0); }

Polynomial Polynomial::operator*(cd s) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      // Pairs (x_j, p_j) for j = 1, 2 commute with each other.
      const int b1 = m1[2], c1x = m2[0];
      const int b2 = m1[3], c2x = m2[1];
      for (int k1 = 0; k1 <= std::min(b1, c1x); ++k1) {
        for (int k2 = 0; k2 <= std::min(b2, c2x); ++k2) {
          const Monomial m{m1[0] + c1x - k1, m1[1] + c2x - k2, b1 - k1 + m2[2], b2 - k2 + m2[3]};
          r.add_term(m, c1 * c2 * reorder_coeff(b1, c1x, k1) * reorder_coeff(b2, c2x, k2));
        }
      }
    }
  }
  return r;
}

Polynomial Polynomial::pruned(double tol) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    if (std::abs(c) > tol) r.terms_[m] = c;
  }
  return r;
}

Polynomial to_polynomial(const QuadraticObservable& q) {
  Polynomial p = Polynomial::scalar(q.constant);
  for (int a = 0; a < 4; ++a) {
    if (q.lin(a) != 0.0) p = p + Polynomial::variable(static_cast<Var>(a)) * cd(q.lin(a));
    for (int b = 0; b < 4; ++b) {
      if (q.quad(a, b) == 0.0) continue;
      const auto va = Polynomial::variable(static_cast<Var>(a));
      const auto vb = Polynomial::variable(static_cast<Var>(b));
      p = p + (va * vb + vb * va) * cd(0.5 * q.quad(a, b));
    }
  }
  return p.pruned();
}

QuadraticObservable from_polynomial(const Polynomial& p, double tol) {
  QuadraticObservable q;
  Eigen::Matrix4cd quad = Eigen::Matrix4cd::Zero();
  Eigen::Vector4cd lin = Eigen::Vector4cd::Zero();
  cd constant = 0.0;
  for (const auto& [m, c] : p.terms()) {
    if (std::abs(c) <= tol) continue;
    const int deg = m[0] + m[1] + m[2] + m[3];
    if (deg > 2) throw ConfigError("observable is cubic or higher; only quadratics are supported");
    if (deg == 0) {
      constant += c;
      continue;
    }
    std::vector<int> vars;
    for (int v = 0; v < 4; ++v) {
      for (int e = 0; e < m[v]; ++e) vars.push_back(v);
    }
    if (deg == 1) {
      lin(vars[0]) += c;
      continue;
    }
    const int a = vars[0], b = vars[1];
    if (a == b) {
      quad(a, a) += c;
    } else {
      quad(a, b) += 0.5 * c;
      quad(b, a) += 0.5 * c;
      // x_j p_j = sym(x_j p_j) + i/2.
      if (b == a + 2) constant += 0.5 * kI * c;
    }
  }
  double imag = std::abs(constant.imag());
  imag = std::max(imag, quad.imag().cwiseAbs().maxCoeff());
  imag = std::max(imag, lin.imag().cwiseAbs().maxCoeff());
  if (imag > tol) throw ConfigError("observable is not symmetric (complex Weyl coefficients)");
  q.quad = quad.real();
  q.lin = lin.real();
  q.constant = constant.real();
  return q;
}

QuadraticObservable commutator_iA(const QuadraticObservable& H, const QuadraticObservable& A) {
  const auto h = to_polynomial(H);
  const auto a = to_polynomial(A);
  return from_polynomial((h * a - a * h) * kI);
}

QuadraticObservable poisson_commutator_iA(const QuadraticObservable& H, const QuadraticObservable& A) {
  const Eigen::Matrix4d j = symplectic();
  const Eigen::Matrix4d m = 4.0 * H.quad * j * A.quad;
  QuadraticObservable out;
  out.quad = -0.5 * (m + m.transpose());
  out.lin = -(2.0 * H.quad * j * A.lin - 2.0 * A.quad * j * H.lin);
  out.constant = -H.lin.dot(j * A.lin);
  return out;
}

QuadraticObservable free_channel_hamiltonian(double B, double alpha) {
  QuadraticObservable h;
  h.add(P1, P1, 1.0).add(X2, P1, 2.0 * B).add(X2, X2, alpha * alpha).add(P2, P2, 1.0);
  return h;
}

QuadraticObservable conjugate_operator(double mu) {
  QuadraticObservable a;
  a.add(X1, P1, 1.0).add(P1, P2, mu);
  return a;
}

Positivity quadratic_positivity(const QuadraticObservable& q, double tol) {
  Positivity r;
  std::vector<int> support;
  for (int a = 0; a < 4; ++a) {
    if (q.quad.row(a).cwiseAbs().maxCoeff() > tol) support.push_back(a);
  }
  if (support.empty()) {
    r.zero = true;
    r.positive_semidefinite = true;
    return r;
  }
  const auto k = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = q.quad(support[i], support[j]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues()(0);
  r.positive_semidefinite = r.min_eigenvalue >= -tol;
  r.definite_on_support = r.min_eigenvalue > tol;
  return r;
}

double max_abs_difference(const QuadraticObservable& a, const QuadraticObservable& b) {
  return std::max({(a.quad - b.quad).cwiseAbs().maxCoeff(), (a.lin - b.lin).cwiseAbs().maxCoeff(),
                   std::abs(a.constant - b.constant)});
}

QuadraticObservable general_conjugate(const GeneralConjugate& g) {
  QuadraticObservable a;
  a.add(P1, P1, -g.a11).add(P1, P2, -2.0 * g.a12).add(P2, P2, -g.a22);
  a.add(X1, P1, -2.0 * g.b11).add(X2, P1, -2.0 * g.b12).add(X1, P2, -2.0 * g.b21).add(X2, P2, -2.0 * g.b22);
  a.add(X1, X1, g.g11).add(X1, X2, 2.0 * g.g12).add(X2, X2, g.g22);
  return a;
}

const std::vector<std::string>& monomial_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [a, b] : monomial_pairs()) n.push_back(std::string(kVarNames[a]) + kVarNames[b]);
    return n;
  }();
  return names;
}

const std::vector<std::string>& nogo_parameter_names() {
  static const std::vector<std::string> names = {"a11", "a12", "a22", "b12", "b21", "b22", "g11", "g12", "g22"};
  return names;
}

bool NogoResult::forced_zero(const std::string& name, double tol) const {
  const auto& names = nogo_parameter_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ConfigError("unknown parameter " + name);
  const auto j = static_cast<Eigen::Index>(it - names.begin());
  return free_basis.cols() == 0 || free_basis.row(j).norm() < tol;
}

std::string NogoResult::format_form(const Eigen::RowVectorXd& form) {
  const auto& names = nogo_parameter_names();
  std::ostringstream out;
  bool first = true;
  for (Eigen::Index j = 0; j < form.size(); ++j) {
    const double c = form(j);
    if (std::abs(c) < 1e-12) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    out << std::abs(c) << ' ' << names[static_cast<std::size_t>(j)];
    first = false;
  }
  return first ? "0" : out.str();
}

NogoResult gen_nogo_scan(double B, double alpha) {
  if (!(alpha > 0.0) || B < 0.0) throw ConfigError("need alpha > 0 and B >= 0");
  NogoResult r;
  r.B = B;
  r.alpha = alpha;
  const auto& params = nogo_parameter_names();
  const int np = static_cast<int>(params.size());
  const auto h0 = free_channel_hamiltonian(B, alpha);

  // forms[a][b]: Q_ab of [H0, iA] as a row vector over the parameters.
  std::array<std::array<Eigen::RowVectorXd, 4>, 4> forms;
  for (auto& row : forms) {
    for (auto& f : row) f = Eigen::RowVectorXd::Zero(np);
  }
  r.table = Eigen::MatrixXd::Zero(10, np);
  for (int j = 0; j < np; ++j) {
    GeneralConjugate g;
    double* fields[] = {&g.a11, &g.a12, &g.a22, &g.b12, &g.b21, &g.b22, &g.g11, &g.g12, &g.g22};
    *fields[j] = 1.0;
    const auto c = commutator_iA(h0, general_conjugate(g));
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) forms[a][b](j) = c.quad(a, b);
    }
    for (int m = 0; m < 10; ++m) {
      const auto [a, b] = monomial_pairs()[static_cast<std::size_t>(m)];
      r.table(m, j) = c.monomial(a, b);
    }
  }

  std::vector<Eigen::RowVectorXd> constraints;
  const auto stack = [&] {
    Eigen::MatrixXd c(static_cast<Eigen::Index>(constraints.size()), np);
    for (std::size_t i = 0; i < constraints.size(); ++i) c.row(static_cast<Eigen::Index>(i)) = constraints[i];
    return c;
  };
  const double tol = 1e-10;
  Eigen::MatrixXd free = null_space(stack(), np);
  const auto restricted = [&](const Eigen::RowVectorXd& f) -> Eigen::RowVectorXd { return f * free; };
  const auto vanishes = [&](const Eigen::RowVectorXd& f) { return free.cols() == 0 || restricted(f).norm() < tol; };

  for (int iter = 0; iter < 64; ++iter) {
    bool all_diag_zero = true;
    for (int a = 0; a < 4; ++a) all_diag_zero = all_diag_zero && vanishes(forms[a][a]);
    if (all_diag_zero) {
      r.verdict = "no-go";
      break;
    }
    bool changed = false;
    for (int a = 0; a < 4 && !changed; ++a) {
      if (!vanishes(forms[a][a])) continue;
      for (int b = 0; b < 4; ++b) {
        if (b != a && !vanishes(forms[a][b])) {
          constraints.push_back(forms[a][b]);
          changed = true;
        }
      }
    }
    for (int a = 0; a < 4 && !changed; ++a) {
      for (int b = a + 1; b < 4 && !changed; ++b) {
        if (vanishes(forms[a][a]) || vanishes(forms[b][b])) continue;
        const Eigen::RowVectorXd da = restricted(forms[a][a]);
        const Eigen::RowVectorXd db = restricted(forms[b][b]);
        const double kappa = da.dot(db) / da.dot(da);
        if (kappa < 0.0 && (db - kappa * da).norm() < tol * std::max(1.0, db.norm())) {
          constraints.push_back(forms[a][a]);
          changed = true;
        }
      }
    }
    if (changed) {
      free = null_space(stack(), np);
      continue;
    }
    // Some diagonal survives: look for a nonzero positive semidefinite member.
    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss;
    r.verdict = "inconclusive";
    for (int trial = 0; trial < 256 && free.cols() > 0; ++trial) {
      Eigen::VectorXd z(free.cols());
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = gauss(rng);
      const Eigen::VectorXd p = free * z;
      QuadraticObservable q;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) q.quad(a, b) = forms[a][b].dot(p);
      }
      const auto pos = quadratic_positivity(q, 1e-12);
      if (!pos.zero && pos.positive_semidefinite) {
        r.verdict = "positive";
        break;
      }
    }
    break;
  }
  r.constraints = stack();
  r.free_basis = free;
  if (r.verdict == "no-go") {
    for (int m = 0; m < 10; ++m) {
      if (!vanishes(r.table.row(m))) r.residual.emplace_back(monomial_names()[static_cast<std::size_t>(m)], r.table.row(m));
    }
  }
  return r;
}

void write_table_text(std::ostream& out, const NogoResult& r) {
  const auto& params = nogo_parameter_names();
  out << "[H0, iA] coefficients, B = " << r.B << ", alpha = " << r.alpha << "\n";
  out << std::setw(8) << "monomial";
  for (const auto& p : params) out << std::setw(11) << p;
  out << '\n';
  for (int m = 0; m < 10; ++m) {
    out << std::setw(8) << monomial_names()[static_cast<std::size_t>(m)];
    for (Eigen::Index j = 0; j < r.table.cols(); ++j) out << std::setw(11) << std::setprecision(6) << r.table(m, j);
    out << '\n';
  }
}

void write_table_csv(std::ostream& out, const NogoResult& r) {
  out << "monomial";
  for (const auto& p : nogo_parameter_names()) out << ',' << p;
  out << '\n' << std::setprecision(17);
  for (int m = 0; m < 10; ++m) {
    out << monomial_names()[static_cast<std::size_t>(m)];
    for (Eigen::Index j = 0; j < r.table.cols(); ++j) out << ',' << r.table(m, j);
    out << '\n';
  }
}

void write_observable_csv(std::ostream& out, const QuadraticObservable& q) {
  out << "term,coefficient\n" << std::setprecision(17);
  for (int m = 0; m < 10; ++m) {
    const auto [a, b] = monomial_pairs()[static_cast<std::size_t>(m)];
    out << monomial_names()[static_cast<std::size_t>(m)] << ',' << q.monomial(a, b) << '\n';
  }
  for (int a = 0; a < 4; ++a) out << kVarNames[a] << ',' << q.lin(a) << '\n';
  out << "1," << q.constant << '\n';
}

}  // namespace channel
