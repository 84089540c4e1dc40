#include "channel/params.hpp"

#include <cmath>

#include "channel/errors.hpp"

namespace channel {

ChannelParams derive_params(double B, double omega) {
  if (!std::isfinite(B) || !std::isfinite(omega)) {
    throw ConfigError("channel parameters must be finite");
  }
  if (omega <= 0.0) {
    throw ConfigError("confinement strength omega must be positive");
  }
  if (B < 0.0) {
    throw ConfigError("magnetic field B must be non-negative (reflect x -> -x for B < 0)");
  }
  ChannelParams p;
  p.B = B;
  p.omega = omega;
  const double alpha2 = B * B + omega * omega;
  p.alpha = std::sqrt(alpha2);
  p.beta = omega * omega / alpha2;
  p.mu = B / alpha2;
  return p;
}

}  // namespace channel
