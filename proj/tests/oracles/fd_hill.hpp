#pragma once

#include <functional>
#include <vector>

namespace oracle {

/// Lowest `count` eigenvalues of -d^2/dx^2 + V on [0, 2 pi) with
/// psi(x + 2 pi) = exp(2 pi i theta) psi(x), second-order central differences
/// on `points` nodes. Banded solve after a zig-zag reordering of the ring.
std::vector<double> fd_hill_eigenvalues(const std::function<double(double)>& v, double theta, int points, int count);

/// Richardson extrapolation (4 E_P - E_{P/2}) / 3.
std::vector<double> fd_hill_richardson(const std::function<double(double)>& v, double theta, int points, int count);

}  // namespace oracle
