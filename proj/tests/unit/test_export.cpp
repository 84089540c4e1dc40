#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <channel/export.hpp>

using namespace channel;

TEST(Export, BandsCsv) {
  std::ostringstream out;
  write_bands_csv(out, {-0.5, 0.0}, {{1.0, 2.0}, {1.5}});
  EXPECT_EQ(out.str(), "theta,j,E\n-0.5,0,1\n-0.5,1,2\n0,0,1.5\n");
}

TEST(Export, PlotDataPerBand) {
  const auto dir = std::filesystem::temp_directory_path() / "channel_export_test";
  std::filesystem::create_directories(dir);
  const auto files = write_band_plot_data(dir, "b", {-0.5, 0.0, 0.5}, {{1.0, 2.0}, {1.5}, {1.0, 2.0}});
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[1].filename(), "b_band1.dat");
  std::ifstream in(files[1]);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), "# theta E\n-0.5 2\n\n0.5 2\n");
  std::filesystem::remove_all(dir);
}

TEST(Export, SvgIsWellFormed) {
  std::ostringstream out;
  GapReport gaps;
  gaps.gaps.push_back({1.2, 1.4});
  write_bands_svg(out, {-0.5, 0.0, 0.5}, {{1.0, 2.0}, {1.1, 1.9}, {1.0, 2.0}}, gaps, "demo <bands>");
  const auto svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.find("<svg") != std::string::npos, true);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("polyline"), std::string::npos);
  EXPECT_EQ(svg.find("<bands>"), std::string::npos);
}

TEST(Export, TrajectoryCsvHeader) {
  const auto p = derive_params(3, 4);
  const auto traj = closed_form_trajectory(p, {0, 0, 0, 1, 0}, 0.1, 0.05);
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,x,y,px,py,energy,pxSx");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Export, MourreJsonHandlesInfinity) {
  const auto r = evaluate_certificate(derive_params(3, 4), PotentialSpec::cosine(0.1), 8.0, 1.0, 1.0);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("W0_prime"), "inf");
  EXPECT_EQ(j.at("admissible"), false);
  EXPECT_NO_THROW(auto s = j.dump());
  EXPECT_NE(summarize(r).find("inadmissible"), std::string::npos);
  std::ostringstream csv;
  write_intervals_csv(csv, r.excluded);
  EXPECT_EQ(csv.str().substr(0, 22), "lo,hi,lo_open,hi_open\n");
}

TEST(Export, NogoJson) {
  const auto j = to_json(gen_nogo_scan(3.0, 5.0));
  EXPECT_EQ(j.at("verdict"), "no-go");
  EXPECT_EQ(j.at("residual").at(0).at("monomial"), "p1p2");
  EXPECT_TRUE(j.at("table").contains("x1x1"));
}
