#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

namespace channel {

struct Eigensystem {
  std::vector<double> values;  ///< ascending
  Eigen::MatrixXcd vectors;    ///< columns match values
};

/// Lowest `count` eigenvalues of a Hermitian matrix (lower triangle is read).
/// Throws NumericalFailure on non-convergence after dumping the matrix to CSV.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a, int count);

/// All eigenvalues <= ceiling, ascending.
std::vector<double> hermitian_eigenvalues_below(const Eigen::MatrixXcd& a, double ceiling);

/// Lowest `count` eigenpairs.
Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& a, int count);

/// Rows row,col,re,im of the full matrix.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& a);

/// Where failing matrices are dumped; defaults to the system temp directory.
void set_failure_dump_directory(const std::filesystem::path& dir);

}  // namespace channel
