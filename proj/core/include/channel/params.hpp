#pragma once

namespace channel {

/// Physical constants of the channel Hamiltonian
///   H = -d^2/dy^2 + (-i d/dx + B y)^2 + omega^2 y^2 + W(x, y)
/// together with the combinations every formula uses.
struct ChannelParams {
  double B = 0.0;
  double omega = 1.0;
  double alpha = 1.0;  ///< sqrt(B^2 + omega^2): spacing scale of the modified Landau levels
  double beta = 1.0;   ///< omega^2 / alpha^2: effective longitudinal mass factor
  double mu = 0.0;     ///< B / alpha^2: guiding-centre offset per unit momentum
};

/// Builds a parameter set. Throws ConfigError unless omega > 0, B >= 0 and
/// both are finite.
ChannelParams derive_params(double B, double omega);

}  // namespace channel
