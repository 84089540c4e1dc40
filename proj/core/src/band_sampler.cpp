#include "channel/band_sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "channel/errors.hpp"

namespace channel {

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers) : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> theta_grid(int theta_count) {
  if (theta_count < 9 || theta_count % 2 == 0) throw ConfigError("theta count must be odd and at least 9");
  std::vector<double> grid(static_cast<std::size_t>(theta_count));
  for (int i = 0; i < theta_count; ++i) grid[i] = -0.5 + static_cast<double>(i) / (theta_count - 1);
  grid[(theta_count - 1) / 2] = 0.0;
  return grid;
}

namespace {

// Thread-safe memo of lowest-k eigenvalues per theta.
class MemoSpectrum {
 public:
  explicit MemoSpectrum(const FiberSpectrum& s) : spectrum_(s) {}

  double band(double theta, int j) {
    theta -= std::round(theta);
    {
      std::lock_guard lock(mutex_);
      const auto it = cache_.find(theta);
      if (it != cache_.end() && static_cast<int>(it->second.size()) > j) return it->second[j];
    }
    auto values = spectrum_.lowest(theta, j + 1);
    if (static_cast<int>(values.size()) <= j) throw NumericalFailure("band index beyond the truncated spectrum");
    const double v = values[j];
    std::lock_guard lock(mutex_);
    auto& slot = cache_[theta];
    if (values.size() > slot.size()) slot = std::move(values);
    return v;
  }

 private:
  const FiberSpectrum& spectrum_;
  std::mutex mutex_;
  std::map<double, std::vector<double>> cache_;
};

// Golden-section search for the minimum of sign * f on [a, b].
double golden_extremum(const std::function<double(double)>& f, double a, double b, double sign, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = sign * f(c);
  double fd = sign * f(d);
  double best = std::min(fc, fd);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = sign * f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = sign * f(d);
    }
    best = std::min({best, fc, fd});
  }
  return sign * best;
}

struct Extremum {
  int band;
  int index;
  double sign;  // +1 minimum, -1 maximum
};

}  // namespace

SampledBands sample_bands(const FiberSpectrum& spectrum, const SamplerOptions& options) {
  SampledBands out;
  out.theta_grid = theta_grid(options.theta_count);
  const int count = options.theta_count;
  const int unique = count - 1;
  out.energies.resize(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(unique), options.workers,
               [&](std::size_t i) { out.energies[i] = spectrum.below(out.theta_grid[i]); });
  out.energies[static_cast<std::size_t>(unique)] = out.energies[0];

  std::size_t bands = 0;
  for (const auto& e : out.energies) bands = std::max(bands, e.size());
  out.intervals.resize(bands);
  for (std::size_t j = 0; j < bands; ++j) {
    auto& iv = out.intervals[j];
    iv.lo = std::numeric_limits<double>::infinity();
    iv.hi = -std::numeric_limits<double>::infinity();
    for (const auto& e : out.energies) {
      if (e.size() > j) {
        iv.lo = std::min(iv.lo, e[j]);
        iv.hi = std::max(iv.hi, e[j]);
      } else {
        iv.clipped = true;
      }
    }
    if (iv.clipped) iv.hi = options.ceiling;
  }
  if (!options.refine) return out;

  std::vector<Extremum> extrema;
  const auto at = [&](int i, std::size_t j) -> const double* {
    const auto& e = out.energies[static_cast<std::size_t>((i % unique + unique) % unique)];
    return e.size() > j ? &e[j] : nullptr;
  };
  for (std::size_t j = 0; j < bands; ++j) {
    for (int i = 0; i < unique; ++i) {
      const double* left = at(i - 1, j);
      const double* mid = at(i, j);
      const double* right = at(i + 1, j);
      if (!left || !mid || !right) continue;
      const double scale = std::max(1.0, std::abs(*mid));
      // Mirror-symmetric neighbours put the extremum on the grid point itself.
      if (std::abs(*left - *right) <= 1e-13 * scale) continue;
      if (*mid <= *left && *mid <= *right) extrema.push_back({static_cast<int>(j), i, 1.0});
      if (*mid >= *left && *mid >= *right && !out.intervals[j].clipped) {
        extrema.push_back({static_cast<int>(j), i, -1.0});
      }
    }
  }
  MemoSpectrum memo(spectrum);
  const double h = 1.0 / unique;
  std::vector<double> refined(extrema.size());
  parallel_for(extrema.size(), options.workers, [&](std::size_t k) {
    const auto& ex = extrema[k];
    const double center = out.theta_grid[static_cast<std::size_t>(ex.index)];
    const auto f = [&](double theta) { return memo.band(theta, ex.band); };
    refined[k] = golden_extremum(f, center - h, center + h, ex.sign, options.refine_tolerance);
  });
  for (std::size_t k = 0; k < extrema.size(); ++k) {
    auto& iv = out.intervals[static_cast<std::size_t>(extrema[k].band)];
    if (extrema[k].sign > 0) {
      iv.lo = std::min(iv.lo, refined[k]);
    } else {
      iv.hi = std::min(std::max(iv.hi, refined[k]), options.ceiling);
    }
  }
  out.refined_extrema = static_cast<int>(extrema.size());
  return out;
}

}  // namespace channel
