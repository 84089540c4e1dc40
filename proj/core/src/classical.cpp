#include "channel/classical.hpp"

#include <algorithm>
#include <cmath>

#include "channel/errors.hpp"

namespace channel {
namespace {

ClassicalState advance(const ClassicalState& s, const std::array<double, 4>& k, double h) {
  return {s.t + h, s.x + h * k[0], s.y + h * k[1], s.px + h * k[2], s.py + h * k[3]};
}

double state_norm(const ClassicalState& s) {
  return std::max({std::abs(s.x), std::abs(s.y), std::abs(s.px), std::abs(s.py)});
}

double relative_change(double e, double e0) {
  return e0 == 0.0 ? std::abs(e - e0) : std::abs(e - e0) / std::abs(e0);
}

}  // namespace

double classical_energy(const ChannelParams& params, const PotentialSpec& spec, const ClassicalState& s) {
  return classical_energy(params, s) + spec(s.x, s.y);
}

double classical_energy(const ChannelParams& params, const ClassicalState& s) {
  const double kin = s.px + s.y * params.B;
  return kin * kin + s.py * s.py + params.omega * params.omega * s.y * s.y;
}

std::array<double, 2> guiding_center(const ChannelParams& params, const ClassicalState& s) {
  return {s.x + params.mu * s.py, -params.mu * s.px};
}

std::array<double, 4> hamilton_rhs(const ChannelParams& params, const PotentialSpec& spec, const ClassicalState& s) {
  const double kin = s.px + s.y * params.B;
  const auto grad = spec.gradient(s.x, s.y);
  return {2.0 * kin, 2.0 * s.py, -grad[0],
          -2.0 * params.B * kin - 2.0 * params.omega * params.omega * s.y - grad[1]};
}

ClassicalState closed_form_solution(const ChannelParams& params, const ClassicalState& initial, double t) {
  const double tau = t - initial.t;
  const double a = params.alpha;
  const double v = initial.px;
  const double amp = initial.y + params.mu * v;
  const double c = std::cos(2.0 * a * tau);
  const double s = std::sin(2.0 * a * tau);
  ClassicalState out;
  out.t = t;
  out.px = v;
  out.y = -params.mu * v + amp * c + initial.py / a * s;
  out.py = initial.py * c - a * amp * s;
  out.x = initial.x + 2.0 * params.beta * v * tau + params.B / a * amp * s +
          params.B * initial.py / (a * a) * (1.0 - c);
  return out;
}

ClassicalState closed_form_solution(const ChannelParams& params, const PotentialSpec& spec,
                                    const ClassicalState& initial, double t) {
  if (!spec.is_zero()) throw ConfigError("closed-form trajectories need W = 0");
  return closed_form_solution(params, initial, t);
}

Trajectory closed_form_trajectory(const ChannelParams& params, const ClassicalState& initial, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= initial.t)) throw ConfigError("need dt > 0 and tEnd >= t0");
  Trajectory traj;
  traj.params = params;
  traj.potential_kind = "Zero";
  traj.method = Trajectory::Method::ClosedForm;
  const auto steps = static_cast<long>(std::ceil((t_end - initial.t) / dt - 1e-12));
  traj.dt = steps > 0 ? (t_end - initial.t) / steps : 0.0;
  const double e0 = classical_energy(params, initial);
  for (long k = 0; k <= steps; ++k) {
    const double t = k == steps ? t_end : initial.t + k * traj.dt;
    traj.states.push_back(k == 0 ? initial : closed_form_solution(params, initial, t));
    traj.energies.push_back(classical_energy(params, traj.states.back()));
    traj.energy_drift = std::max(traj.energy_drift, relative_change(traj.energies.back(), e0));
  }
  return traj;
}

Trajectory integrate(const ChannelParams& params, const PotentialSpec& spec, const ClassicalState& initial,
                     double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= initial.t)) throw ConfigError("need dt > 0 and tEnd >= t0");
  Trajectory traj;
  traj.params = params;
  traj.potential_kind = spec.kind_name();
  traj.method = Trajectory::Method::Integrator;
  const auto steps = static_cast<long>(std::ceil((t_end - initial.t) / dt - 1e-12));
  const double h = steps > 0 ? (t_end - initial.t) / steps : 0.0;
  traj.dt = h;
  ClassicalState s = initial;
  const double e0 = classical_energy(params, spec, s);
  traj.states.push_back(s);
  traj.energies.push_back(e0);
  for (long step = 0; step < steps; ++step) {
    const auto k1 = hamilton_rhs(params, spec, s);
    const auto k2 = hamilton_rhs(params, spec, advance(s, k1, 0.5 * h));
    const auto k3 = hamilton_rhs(params, spec, advance(s, k2, 0.5 * h));
    const auto k4 = hamilton_rhs(params, spec, advance(s, k3, h));
    std::array<double, 4> k{};
    for (int i = 0; i < 4; ++i) k[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    s = advance(s, k, h);
    s.t = step + 1 == steps ? t_end : initial.t + (step + 1) * h;
    if (!std::isfinite(state_norm(s)) || state_norm(s) > 1e9) {
      traj.aborted = true;
      traj.abort_reason = "blow-up: |state| > 1e9 at t = " + std::to_string(s.t);
      break;
    }
    traj.states.push_back(s);
    traj.energies.push_back(classical_energy(params, spec, s));
    traj.energy_drift = std::max(traj.energy_drift, relative_change(traj.energies.back(), e0));
  }
  return traj;
}

MourreSeries mourre_observable(const Trajectory& traj) {
  MourreSeries out;
  for (const auto& s : traj.states) {
    out.t.push_back(s.t);
    out.value.push_back(s.px * guiding_center(traj.params, s)[0]);
  }
  const std::size_t n = out.t.size();
  if (n < 2) return out;
  double tm = 0.0, vm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tm += out.t[i];
    vm += out.value[i];
  }
  tm /= static_cast<double>(n);
  vm /= static_cast<double>(n);
  double stt = 0.0, stv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (out.t[i] - tm) * (out.t[i] - tm);
    stv += (out.t[i] - tm) * (out.value[i] - vm);
  }
  out.slope = stt > 0.0 ? stv / stt : 0.0;
  return out;
}

double mourre_slope_exact(const ChannelParams& params, double px) { return 2.0 * params.beta * px * px; }

}  // namespace channel
