#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <list>
#include <map>

#include <channel/channel.hpp>

namespace cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace channel;

class Writer {
 public:
  Writer(const fs::path& dir, CommandResult& result) : dir_(dir), result_(result) {}

  std::ofstream& open(const std::string& name) {
    const auto path = dir_ / name;
    auto& out = streams_.emplace_back(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    result_.artifacts.push_back(path);
    return out;
  }

  void json_file(const std::string& name, const json& j) { open(name) << std::setw(2) << j << '\n'; }

  void add(const std::vector<fs::path>& paths) {
    result_.artifacts.insert(result_.artifacts.end(), paths.begin(), paths.end());
  }

 private:
  fs::path dir_;
  CommandResult& result_;
  std::list<std::ofstream> streams_;
};

ChannelParams params_of(const RunConfig& cfg) { return derive_params(cfg.number("B"), cfg.number("omega")); }

BandOptions band_options(const RunConfig& cfg) {
  BandOptions o;
  o.theta_count = cfg.integer("theta_count");
  o.ceiling = cfg.number("ceiling");
  o.truncation = {cfg.integer("n_modes"), cfg.integer("m_cutoff"), 0};
  o.mfourier = cfg.integer("mfourier");
  o.auto_raise = cfg.values.at("auto_raise").get<bool>();
  o.max_raises = cfg.integer("max_raises");
  o.cauchy_tolerance = cfg.number("cauchy_tolerance");
  o.workers = cfg.workers;
  return o;
}

CommandResult bands_like(const RunConfig& cfg, bool gaps_only) {
  CommandResult res;
  Writer w(cfg.out_dir, res);
  const auto params = params_of(cfg);
  const auto bs = compute_bands(params, cfg.potential, band_options(cfg));
  const auto gaps = detect_gaps(bs, cfg.number("gap_tolerance"));
  write_bands_csv(w.open("bands.csv"), bs);
  if (gaps_only) {
    json j = to_json(gaps);
    j["converged"] = bs.converged;
    j["warnings"] = bs.warnings;
    w.json_file("gaps.json", j);
  } else {
    json j = to_json(bs);
    j["gaps"] = to_json(gaps);
    w.json_file("bands.json", j);
    w.add(write_band_plot_data(cfg.out_dir, "bands", bs.theta_grid, bs.energies));
  }
  if (cfg.svg) write_bands_svg(w.open("bands.svg"), bs.theta_grid, bs.energies, gaps, "band structure");
  res.converged = bs.converged;
  if (!bs.converged) res.note = "band truncation did not pass the Cauchy test";
  return res;
}

CommandResult sweep_omega(const RunConfig& cfg) {
  CommandResult res;
  Writer w(cfg.out_dir, res);
  SweepOptions o;
  o.theta_count = cfg.integer("theta_count");
  o.n_modes = cfg.integer("sweep_n_modes");
  o.workers = cfg.workers;
  const auto r = gap_persistence_sweep(cfg.number("B"), cfg.numbers("omegas"), cfg.potential, cfg.integer("target_gaps"), o);
  w.json_file("sweep.json", to_json(r));
  auto& csv = w.open("sweep.csv");
  csv << "omega,gap,full_lo,full_hi,h00_lo,h00_hi,discrepancy\n" << std::setprecision(17);
  for (const auto& row : r.rows) {
    for (std::size_t g = 0; g < row.edge_discrepancy.size(); ++g) {
      csv << row.omega << ',' << g << ',' << row.full.gaps[g].lo << ',' << row.full.gaps[g].hi << ','
          << row.h00.gaps[g].lo << ',' << row.h00.gaps[g].hi << ',' << row.edge_discrepancy[g] << '\n';
    }
    if (!row.converged) res.converged = false;
  }
  if (!res.converged) res.note = "truncation did not converge for some omega";
  return res;
}

CommandResult hill(const RunConfig& cfg) {
  CommandResult res;
  Writer w(cfg.out_dir, res);
  const auto params = params_of(cfg);
  const int n = cfg.integer("hill_n");
  if (n < 0) throw ConfigError("hill_n must be non-negative");
  const auto proj = project_potential(cfg.potential, params, n, 2 * cfg.integer("hill_M"));
  HillOptions o;
  o.theta_count = cfg.integer("theta_count");
  o.M = cfg.integer("hill_M");
  o.offset = params.alpha * (2 * n + 1);
  o.workers = cfg.workers;
  double ceiling = cfg.number("ceiling");
  if (ceiling <= 0.0) ceiling = o.offset + 2.0 * params.alpha + cfg.potential.norms().w0;
  auto band = hill_bands(projected_coeffs(proj, n), ceiling, o, cfg.number("gap_tolerance"));
  band.n = n;
  write_bands_csv(w.open("hill_bands.csv"), band.theta_grid, band.energies);
  json j = to_json(band);
  j["offset"] = o.offset;
  j["ceiling"] = ceiling;
  j["warnings"] = proj.warnings();
  w.json_file("hill.json", j);
  w.add(write_band_plot_data(cfg.out_dir, "hill", band.theta_grid, band.energies));
  if (cfg.svg) write_bands_svg(w.open("hill.svg"), band.theta_grid, band.energies, band.gaps, "Hill bands");
  return res;
}

CommandResult classical(const RunConfig& cfg) {
  CommandResult res;
  Writer w(cfg.out_dir, res);
  const auto params = params_of(cfg);
  const ClassicalState s0{0.0, cfg.number("x0"), cfg.number("y0"), cfg.number("px0"), cfg.number("py0")};
  const double dt = cfg.number("dt"), t_end = cfg.number("tEnd");
  const auto traj = integrate(params, cfg.potential, s0, t_end, dt);
  const auto series = mourre_observable(traj);
  write_trajectory_csv(w.open("trajectory.csv"), traj);
  json j = to_json(traj, series);
  if (cfg.potential.is_zero()) {
    const auto exact = closed_form_trajectory(params, s0, t_end, dt);
    write_trajectory_csv(w.open("trajectory_closed_form.csv"), exact);
    double err = 0.0;
    for (std::size_t i = 0; i < traj.states.size() && i < exact.states.size(); ++i) {
      err = std::max({err, std::abs(traj.states[i].x - exact.states[i].x), std::abs(traj.states[i].y - exact.states[i].y)});
    }
    j["closed_form"] = to_json(exact, mourre_observable(exact));
    j["max_position_error"] = err;
    j["mourre_slope_exact"] = mourre_slope_exact(params, s0.px);
  }
  w.json_file("classical.json", j);
  if (traj.aborted) {
    res.converged = false;
    res.note = traj.abort_reason;
  }
  return res;
}

CommandResult mourre(const RunConfig& cfg) {
  CommandResult res;
  Writer w(cfg.out_dir, res);
  const auto params = params_of(cfg);
  const double c = cfg.number("c");
  const auto r = evaluate_certificate(params, cfg.potential, cfg.number("E"), cfg.number("delta"), cfg.number("eps"), c);
  w.json_file("mourre.json", to_json(r));
  w.open("mourre.txt") << summarize(r);
  write_intervals_csv(w.open("excluded.csv"), r.excluded);
  write_intervals_csv(w.open("certified.csv"), r.certified_set);
  const auto omegas = cfg.numbers("scaling_omegas");
  if (!omegas.empty()) {
    const auto s = scaling_sweep(cfg.number("B"), cfg.number("E0"), cfg.number("delta0"), cfg.number("eps0"),
                                 cfg.potential, omegas, c, cfg.workers);
    w.json_file("scaling.json", to_json(s));
  }
  return res;
}

CommandResult commutator(const RunConfig& cfg) {
  CommandResult res;
  Writer w(cfg.out_dir, res);
  const auto params = params_of(cfg);
  const auto h0 = free_channel_hamiltonian(params.B, params.alpha);
  const auto a = conjugate_operator(params.mu);
  const auto c = commutator_iA(h0, a);
  json j;
  j["H0"] = to_json(h0);
  j["A"] = to_json(a);
  j["commutator"] = to_json(c);
  j["poisson_difference"] = max_abs_difference(c, poisson_commutator_iA(h0, a));
  const auto pos = quadratic_positivity(c);
  j["positive_semidefinite"] = pos.positive_semidefinite;
  j["min_eigenvalue"] = pos.min_eigenvalue;
  w.json_file("commutator.json", j);
  write_observable_csv(w.open("commutator.csv"), c);
  if (cfg.gen_nogo) {
    const auto r = gen_nogo_scan(params.B, params.alpha);
    w.json_file("gen_nogo.json", to_json(r));
    write_table_text(w.open("gen_nogo.txt"), r);
    write_table_csv(w.open("gen_nogo.csv"), r);
  }
  return res;
}

CommandResult diagnostics(const RunConfig& cfg) {
  CommandResult res;
  Writer w(cfg.out_dir, res);
  const auto params = params_of(cfg);
  const auto& n = cfg.potential.norms();
  json j;
  j["params"] = to_json(params);
  const auto num = [](double v) -> json { return std::isinf(v) ? json("inf") : json(v); };
  j["potential"] = {{"kind", cfg.potential.kind_name()}, {"W0", num(n.w0)},   {"W0_prime", num(n.w0_prime)},
                    {"d2x", num(n.d2x)},                 {"d2y", num(n.d2y)}, {"dxdy", num(n.dxdy)},
                    {"x2d2x", num(n.x2d2x)},             {"smooth", n.smooth}, {"analytic", n.analytic}};
  const auto appendix = appendix_norm_checks(params, cfg.number("lambda"), cfg.integer("appendix_N"),
                                             cfg.integer("appendix_M"), cfg.number("c"));
  j["appendix"] = to_json(appendix);
  json bounds = json::array();
  for (double t2 : cfg.numbers("theta2")) {
    const auto b = complex_theta_resolvent_bound(params, t2);
    bounds.push_back({{"theta2", t2}, {"sup_value", b.sup_value}, {"bound", b.bound}, {"pass", b.pass}});
  }
  j["complex_theta"] = bounds;
  w.json_file("diagnostics.json", j);
  return res;
}

const std::map<std::string, std::function<CommandResult(const RunConfig&)>>& registry() {
  static const std::map<std::string, std::function<CommandResult(const RunConfig&)>> r = {
      {"bands", [](const RunConfig& c) { return bands_like(c, false); }},
      {"gaps", [](const RunConfig& c) { return bands_like(c, true); }},
      {"sweep-omega", sweep_omega},
      {"hill", hill},
      {"classical", classical},
      {"mourre", mourre},
      {"commutator", commutator},
      {"diagnostics", diagnostics},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
  }();
  return names;
}

CommandResult run_command(const RunConfig& cfg) {
  const auto it = registry().find(cfg.command);
  if (it == registry().end()) throw ConfigError("unknown command '" + cfg.command + "'");
  return it->second(cfg);
}

}  // namespace cli
