#include "channel/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <string>

#include <lapacke.h>

#include "channel/errors.hpp"

namespace channel {
namespace {

std::mutex dump_mutex;
std::filesystem::path dump_dir;
std::atomic<int> dump_counter{0};

[[noreturn]] void fail(const Eigen::MatrixXcd& a, const std::string& what, lapack_int info) {
  std::filesystem::path path;
  {
    std::lock_guard lock(dump_mutex);
    const auto dir = dump_dir.empty() ? std::filesystem::temp_directory_path() : dump_dir;
    path = dir / ("channel_failed_matrix_" + std::to_string(dump_counter++) + ".csv");
  }
  std::ofstream out(path);
  if (out) write_matrix_csv(out, a);
  throw NumericalFailure(what + " failed (info = " + std::to_string(info) + "); matrix dumped to " + path.string());
}

struct Request {
  char range = 'A';
  double vu = 0.0;
  int il = 1;
  int iu = 1;
  bool vectors = false;
};

Eigensystem solve(const Eigen::MatrixXcd& a, const Request& req) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.rows() != a.cols()) throw ConfigError("eigensolver needs a square matrix");
  Eigensystem out;
  if (n == 0) return out;
  Eigen::MatrixXcd work = a;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int ldz = req.vectors ? n : 1;
  Eigen::MatrixXcd z(req.vectors ? n : 1, req.vectors ? n : 1);
  const double vl = -std::numeric_limits<double>::max();
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, req.vectors ? 'V' : 'N', req.range, 'L', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n, vl, req.vu, req.il, req.iu, 0.0, &found, w.data(),
      reinterpret_cast<lapack_complex_double*>(z.data()), ldz, support.data());
  if (info != 0) fail(a, "zheevr", info);
  out.values.assign(w.begin(), w.begin() + found);
  if (req.vectors) out.vectors = z.leftCols(found);
  return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a, int count) {
  if (count < 0 || count > a.rows()) throw ConfigError("requested eigenvalue count exceeds the matrix dimension");
  if (count == 0) return {};
  Request req;
  req.range = 'I';
  req.iu = count;
  return solve(a, req).values;
}

std::vector<double> hermitian_eigenvalues_below(const Eigen::MatrixXcd& a, double ceiling) {
  Request req;
  req.range = 'V';
  req.vu = ceiling;
  return solve(a, req).values;
}

Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& a, int count) {
  if (count < 0 || count > a.rows()) throw ConfigError("requested eigenvalue count exceeds the matrix dimension");
  if (count == 0) return {};
  Request req;
  req.range = 'I';
  req.iu = count;
  req.vectors = true;
  return solve(a, req);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& a) {
  out << "row,col,re,im\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out << i << ',' << j << ',' << a(i, j).real() << ',' << a(i, j).imag() << '\n';
    }
  }
}

void set_failure_dump_directory(const std::filesystem::path& dir) {
  std::lock_guard lock(dump_mutex);
  dump_dir = dir;
}

}  // namespace channel
