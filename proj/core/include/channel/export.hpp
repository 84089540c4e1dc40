#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "channel/bands.hpp"
#include "channel/classical.hpp"
#include "channel/commutator.hpp"
#include "channel/hill.hpp"
#include "channel/mourre.hpp"

namespace channel {

/// Rows theta,j,E (j from 0).
void write_bands_csv(std::ostream& out, const std::vector<double>& theta_grid,
                     const std::vector<std::vector<double>>& energies);
void write_bands_csv(std::ostream& out, const BandStructure& bs);

/// One gnuplot-ready "theta E" file per band: <stem>_band<j>.dat. Returns the paths written.
std::vector<std::filesystem::path> write_band_plot_data(const std::filesystem::path& dir, const std::string& stem,
                                                        const std::vector<double>& theta_grid,
                                                        const std::vector<std::vector<double>>& energies);

/// Band diagram as a standalone SVG (bands as polylines, gaps shaded).
void write_bands_svg(std::ostream& out, const std::vector<double>& theta_grid,
                     const std::vector<std::vector<double>>& energies, const GapReport& gaps,
                     const std::string& title);

/// Rows t,x,y,px,py,energy,pxSx.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Rows lo,hi,lo_open,hi_open.
void write_intervals_csv(std::ostream& out, const std::vector<Interval>& intervals);

nlohmann::json to_json(const ChannelParams& p);
nlohmann::json to_json(const GapReport& r);
nlohmann::json to_json(const BandStructure& bs);
nlohmann::json to_json(const GapPersistenceResult& r);
nlohmann::json to_json(const HillBand& h);
nlohmann::json to_json(const Interval& iv);
nlohmann::json to_json(const MourreReport& r);
nlohmann::json to_json(const ScalingResult& r);
nlohmann::json to_json(const AppendixCheck& r);
nlohmann::json to_json(const NogoResult& r);
nlohmann::json to_json(const QuadraticObservable& q);
nlohmann::json to_json(const Trajectory& t, const MourreSeries& series);

/// Plain-text summary of a certificate.
std::string summarize(const MourreReport& r);

}  // namespace channel
