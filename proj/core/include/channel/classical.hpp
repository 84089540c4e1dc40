#pragma once

#include <array>
#include <string>
#include <vector>

#include "channel/params.hpp"
#include "channel/potential.hpp"

namespace channel {

/// Canonical phase-space point; px = xdot / 2 - y B, py = ydot / 2.
struct ClassicalState {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double px = 0.0;
  double py = 0.0;
};

/// (px + y B)^2 + py^2 + omega^2 y^2 + W(x, y).
double classical_energy(const ChannelParams& params, const PotentialSpec& spec, const ClassicalState& s);
double classical_energy(const ChannelParams& params, const ClassicalState& s);

/// Guiding centre (S_x, S_y) = (x + mu py, -mu px).
std::array<double, 2> guiding_center(const ChannelParams& params, const ClassicalState& s);

/// Time derivative of (x, y, px, py) under H_cl + W.
std::array<double, 4> hamilton_rhs(const ChannelParams& params, const PotentialSpec& spec, const ClassicalState& s);

/// Exact W = 0 flow from `initial` to time t: cyclotron ellipse at frequency
/// 2 alpha around a centre drifting with velocity 2 beta px.
ClassicalState closed_form_solution(const ChannelParams& params, const ClassicalState& initial, double t);
/// Same, rejecting a nonzero potential.
ClassicalState closed_form_solution(const ChannelParams& params, const PotentialSpec& spec,
                                    const ClassicalState& initial, double t);

struct Trajectory {
  enum class Method { ClosedForm, Integrator };

  std::vector<ClassicalState> states;
  ChannelParams params;
  std::string potential_kind;
  Method method = Method::Integrator;
  double dt = 0.0;
  double energy_drift = 0.0;  ///< max_t |H(t) - H(0)| / |H(0)| (absolute when H(0) = 0)
  bool aborted = false;
  std::string abort_reason;
  std::vector<double> energies;
};

/// Closed-form samples at t0, t0 + dt, ..., tEnd.
Trajectory closed_form_trajectory(const ChannelParams& params, const ClassicalState& initial, double t_end, double dt);

/// Classical RK4 with ceil((tEnd - t0) / dt) equal steps. Stops early, keeping
/// the partial trajectory, once |state| exceeds 1e9.
Trajectory integrate(const ChannelParams& params, const PotentialSpec& spec, const ClassicalState& initial,
                     double t_end, double dt);

struct MourreSeries {
  std::vector<double> t;
  std::vector<double> value;  ///< px (x + mu py)
  double slope = 0.0;         ///< least-squares slope
};

MourreSeries mourre_observable(const Trajectory& traj);

/// 2 beta px^2, the W = 0 growth rate of px S_x.
double mourre_slope_exact(const ChannelParams& params, double px);

}  // namespace channel
