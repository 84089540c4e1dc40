#include "channel/export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "channel/errors.hpp"

namespace channel {
namespace {

using nlohmann::json;

// JSON has no infinity; unbounded values are written as the string "inf".
json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

json intervals_json(const std::vector<BandInterval>& ivs) {
  json arr = json::array();
  for (const auto& iv : ivs) arr.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"clipped", iv.clipped}});
  return arr;
}

}  // namespace

void write_bands_csv(std::ostream& out, const std::vector<double>& theta_grid,
                     const std::vector<std::vector<double>>& energies) {
  out << "theta,j,E\n" << std::setprecision(17);
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    for (std::size_t j = 0; j < energies[i].size(); ++j) {
      out << theta_grid[i] << ',' << j << ',' << energies[i][j] << '\n';
    }
  }
}

void write_bands_csv(std::ostream& out, const BandStructure& bs) { write_bands_csv(out, bs.theta_grid, bs.energies); }

std::vector<std::filesystem::path> write_band_plot_data(const std::filesystem::path& dir, const std::string& stem,
                                                        const std::vector<double>& theta_grid,
                                                        const std::vector<std::vector<double>>& energies) {
  std::size_t bands = 0;
  for (const auto& e : energies) bands = std::max(bands, e.size());
  std::vector<std::filesystem::path> written;
  for (std::size_t j = 0; j < bands; ++j) {
    const auto path = dir / (stem + "_band" + std::to_string(j) + ".dat");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << "# theta E\n" << std::setprecision(17);
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
      // A blank line breaks the gnuplot curve where the band leaves the window.
      if (energies[i].size() > j) {
        out << theta_grid[i] << ' ' << energies[i][j] << '\n';
      } else {
        out << '\n';
      }
    }
    written.push_back(path);
  }
  return written;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string r;
  r.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '<': r += "&lt;"; break;
      case '>': r += "&gt;"; break;
      case '&': r += "&amp;"; break;
      case '"': r += "&quot;"; break;
      default: r += c;
    }
  }
  return r;
}

}  // namespace

void write_bands_svg(std::ostream& out, const std::vector<double>& theta_grid,
                     const std::vector<std::vector<double>>& energies, const GapReport& gaps,
                     const std::string& title) {
  constexpr double w = 640, h = 480, left = 70, right = 20, top = 40, bottom = 50;
  double emin = std::numeric_limits<double>::infinity();
  double emax = -emin;
  for (const auto& row : energies) {
    for (double e : row) {
      emin = std::min(emin, e);
      emax = std::max(emax, e);
    }
  }
  if (!std::isfinite(emin)) emin = 0.0, emax = 1.0;
  if (emax <= emin) emax = emin + 1.0;
  const double pad = 0.05 * (emax - emin);
  emin -= pad;
  emax += pad;
  const auto px = [&](double theta) { return left + (theta + 0.5) * (w - left - right); };
  const auto py = [&](double e) { return top + (emax - e) / (emax - emin) * (h - top - bottom); };

  out << std::setprecision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << xml_escape(title) << "</text>\n";
  for (const auto& g : gaps.gaps) {
    const double y0 = py(std::min(g.hi, emax));
    const double y1 = py(std::max(g.lo, emin));
    out << "<rect x=\"" << left << "\" y=\"" << y0 << "\" width=\"" << w - left - right << "\" height=\"" << y1 - y0
        << "\" fill=\"#f4d03f\" fill-opacity=\"0.35\"/>\n";
  }
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w - left - right << "\" height=\""
      << h - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  std::size_t bands = 0;
  for (const auto& e : energies) bands = std::max(bands, e.size());
  for (std::size_t j = 0; j < bands; ++j) {
    std::ostringstream pts;
    bool open = false;
    const auto flush = [&] {
      if (open) out << "<polyline fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1.5\" points=\"" << pts.str()
                    << "\"/>\n";
      pts.str("");
      open = false;
    };
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
      if (energies[i].size() > j) {
        pts << px(theta_grid[i]) << ',' << py(energies[i][j]) << ' ';
        open = true;
      } else {
        flush();
      }
    }
    flush();
  }
  for (int t = 0; t <= 4; ++t) {
    const double theta = -0.5 + 0.25 * t;
    out << "<text x=\"" << px(theta) << "\" y=\"" << h - bottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << theta << "</text>\n";
    const double e = emin + (emax - emin) * t / 4.0;
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(e) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << e << "</text>\n";
  }
  out << "<text x=\"" << w / 2 << "\" y=\"" << h - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">theta</text>\n";
  out << "<text x=\"16\" y=\"" << h / 2 << "\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
      << h / 2 << ")\" text-anchor=\"middle\">E</text>\n";
  out << "</svg>\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,x,y,px,py,energy,pxSx\n" << std::setprecision(17);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& s = traj.states[i];
    out << s.t << ',' << s.x << ',' << s.y << ',' << s.px << ',' << s.py << ',' << traj.energies[i] << ','
        << s.px * guiding_center(traj.params, s)[0] << '\n';
  }
}

void write_intervals_csv(std::ostream& out, const std::vector<Interval>& intervals) {
  out << "lo,hi,lo_open,hi_open\n" << std::setprecision(17);
  for (const auto& iv : intervals) {
    out << iv.lo << ',' << iv.hi << ',' << (iv.lo_open ? 1 : 0) << ',' << (iv.hi_open ? 1 : 0) << '\n';
  }
}

json to_json(const ChannelParams& p) {
  return {{"B", p.B}, {"omega", p.omega}, {"alpha", p.alpha}, {"beta", p.beta}, {"mu", p.mu}};
}

json to_json(const GapReport& r) {
  json gaps = json::array();
  for (const auto& g : r.gaps) gaps.push_back({{"lo", g.lo}, {"hi", g.hi}, {"width", g.width()}});
  return {{"count", r.count()}, {"bottom", number(r.bottom)}, {"ceiling", r.ceiling}, {"gaps", gaps}};
}

json to_json(const BandStructure& bs) {
  return {{"params", to_json(bs.params)},
          {"ceiling", bs.ceiling},
          {"n_modes", bs.truncation.n_modes},
          {"m_cutoff", bs.truncation.m_cutoff},
          {"m_fourier", bs.mfourier},
          {"converged", bs.converged},
          {"cauchy_change", bs.cauchy_change},
          {"theta_count", bs.theta_grid.size()},
          {"bottom", number(bs.bottom())},
          {"intervals", intervals_json(bs.intervals)},
          {"warnings", bs.warnings}};
}

json to_json(const GapPersistenceResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"omega", row.omega},
                    {"params", to_json(row.params)},
                    {"converged", row.converged},
                    {"full", to_json(row.full)},
                    {"h00", to_json(row.h00)},
                    {"edge_discrepancy", row.edge_discrepancy}});
  }
  return {{"rows", rows},
          {"tracked_gaps", r.tracked_gaps},
          {"decreasing", r.decreasing},
          {"final_within_fraction", r.final_within_fraction}};
}

json to_json(const HillBand& h) {
  return {{"n", h.n}, {"theta_count", h.theta_grid.size()}, {"intervals", intervals_json(h.intervals)},
          {"gaps", to_json(h.gaps)}};
}

json to_json(const Interval& iv) {
  return {{"lo", number(iv.lo)}, {"hi", number(iv.hi)}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

json to_json(const MourreReport& r) {
  json excluded = json::array();
  for (const auto& iv : r.excluded) excluded.push_back(to_json(iv));
  json certified = json::array();
  for (const auto& iv : r.certified_set) certified.push_back(to_json(iv));
  return {{"params", to_json(r.params)},
          {"E", r.E},
          {"delta", r.delta},
          {"eps", r.eps},
          {"c", r.c},
          {"C", r.C},
          {"W0", number(r.w0)},
          {"W0_prime", number(r.w0_prime)},
          {"excluded_intervals", excluded},
          {"intervals_disjoint", r.intervals_disjoint},
          {"condition_I_threshold", r.condition_one_threshold},
          {"condition_I", r.condition_one},
          {"condition_II_lhs", number(r.condition_two_lhs)},
          {"condition_II_rhs", r.condition_two_rhs},
          {"condition_II", r.condition_two},
          {"W0_below_alpha", r.w0_below_alpha},
          {"E_outside_excluded", r.energy_outside_excluded},
          {"spectrum_lower_bound", number(r.spectrum_lower_bound)},
          {"certified_set", certified},
          {"admissible", r.admissible},
          {"reasons", r.reasons}};
}

json to_json(const ScalingResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"omega", row.omega},
                    {"alpha", row.params.alpha},
                    {"E", row.E},
                    {"delta", row.delta},
                    {"eps", row.eps},
                    {"condition_I_threshold", row.condition_one_threshold},
                    {"W0_prime_threshold", row.w0_prime_threshold},
                    {"condition_II_slack", number(row.condition_two_slack)},
                    {"E_outside_excluded", row.energy_outside_excluded},
                    {"admissible", row.admissible}});
  }
  json first = r.first_admissible_omega ? json(*r.first_admissible_omega) : json(nullptr);
  return {{"rows", rows}, {"thresholds_increasing", r.thresholds_increasing}, {"first_admissible_omega", first}};
}

json to_json(const AppendixCheck& r) {
  return {{"lambda_plus", r.lambda_plus},
          {"lambda_minus", r.lambda_minus},
          {"lambda_minus_floor", r.lambda_minus_floor},
          {"eigen_formula_error", r.eigen_formula_error},
          {"lambda_bound_holds", r.lambda_bound_holds},
          {"estimates",
           {{"d2y", r.d2y}, {"d2x", r.d2x}, {"2ydx", r.ydx}, {"y2", r.y2}, {"dxdy", r.dxdy}}},
          {"bounds", {{"i", r.bound_i}, {"ii", r.bound_ii}, {"iii", r.bound_iii}}},
          {"pass", r.pass},
          {"violations", r.violations}};
}

json to_json(const NogoResult& r) {
  json table = json::object();
  for (int m = 0; m < r.table.rows(); ++m) {
    json row = json::object();
    for (Eigen::Index j = 0; j < r.table.cols(); ++j) {
      row[nogo_parameter_names()[static_cast<std::size_t>(j)]] = r.table(m, j);
    }
    table[monomial_names()[static_cast<std::size_t>(m)]] = row;
  }
  json residual = json::array();
  for (const auto& [name, form] : r.residual) {
    residual.push_back({{"monomial", name}, {"coefficient", NogoResult::format_form(form)}});
  }
  json forced = json::array();
  for (const auto& n : nogo_parameter_names()) {
    if (r.forced_zero(n)) forced.push_back(n);
  }
  return {{"verdict", r.verdict}, {"B", r.B},       {"alpha", r.alpha},
          {"table", table},       {"residual", residual}, {"forced_zero", forced}};
}

json to_json(const QuadraticObservable& q) {
  json terms = json::object();
  for (int m = 0; m < 10; ++m) {
    static const Var pairs[10][2] = {{X1, X1}, {X1, X2}, {X1, P1}, {X1, P2}, {X2, X2},
                                     {X2, P1}, {X2, P2}, {P1, P1}, {P1, P2}, {P2, P2}};
    terms[monomial_names()[static_cast<std::size_t>(m)]] = q.monomial(pairs[m][0], pairs[m][1]);
  }
  return {{"quadratic", terms},
          {"linear", {{"x1", q.lin(0)}, {"x2", q.lin(1)}, {"p1", q.lin(2)}, {"p2", q.lin(3)}}},
          {"constant", q.constant}};
}

json to_json(const Trajectory& t, const MourreSeries& series) {
  return {{"params", to_json(t.params)},
          {"potential", t.potential_kind},
          {"method", t.method == Trajectory::Method::ClosedForm ? "closed_form" : "integrator"},
          {"dt", t.dt},
          {"steps", t.states.empty() ? 0 : t.states.size() - 1},
          {"energy_drift", t.energy_drift},
          {"aborted", t.aborted},
          {"abort_reason", t.abort_reason},
          {"mourre_slope", series.slope}};
}

std::string summarize(const MourreReport& r) {
  std::ostringstream out;
  out << std::setprecision(8);
  out << "alpha = " << r.params.alpha << ", beta = " << r.params.beta << ", C = " << r.C << "\n";
  out << "E = " << r.E << ", delta = " << r.delta << ", eps = " << r.eps << "\n";
  out << "W0 = " << r.w0 << ", W0' = " << r.w0_prime << "\n";
  out << "condition (I):  W0 < " << r.condition_one_threshold << "  " << (r.condition_one ? "holds" : "fails") << "\n";
  out << "condition (II): " << r.condition_two_lhs << " < " << r.condition_two_rhs << "  "
      << (r.condition_two ? "holds" : "fails") << "\n";
  out << "certified set:";
  if (r.certified_set.empty()) out << " (empty)";
  for (const auto& iv : r.certified_set) {
    out << ' ' << (iv.lo_open ? '(' : '[') << iv.lo << ", " << iv.hi << (iv.hi_open ? ')' : ']');
  }
  out << "\n" << (r.admissible ? "admissible" : "inadmissible");
  for (const auto& why : r.reasons) out << "\n  - " << why;
  out << "\n";
  return out.str();
}

}  // namespace channel
