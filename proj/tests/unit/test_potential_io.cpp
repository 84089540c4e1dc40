#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <channel/errors.hpp>
#include <channel/potential_io.hpp>

using namespace channel;
using nlohmann::json;

TEST(PotentialIO, CosineShorthand) {
  const auto spec = potential_from_json(json{{"kind", "cosine"}, {"amplitude", 2.0}});
  EXPECT_DOUBLE_EQ(spec(0.0, 1.0), 2.0);
  EXPECT_NEAR(spec(3.14159265358979, 0.0), -2.0, 1e-12);
}

TEST(PotentialIO, RoundTripAllKinds) {
  const std::vector<json> docs = {
      {{"kind", "zero"}},
      {{"kind", "x_only"}, {"coeffs", {{{"k", 1}, {"re", 1.0}}, {{"k", -1}, {"re", 1.0}}}}},
      {{"kind", "x_fourier"},
       {"coeffs", {{{"k", 2}, {"re", 0.5}, {"im", 0.25}}, {{"k", -2}, {"re", 0.5}, {"im", -0.25}}}},
       {"profile", {{"type", "gaussian"}, {"amplitude", 1.0}, {"sigma", 0.5}}}},
      {{"kind", "y_only"}, {"profile", {{"type", "polynomial"}, {"coefficients", {1.0, 0.0, 0.5}}}}},
      {{"kind", "bumps"}, {"bumps", {{{"amplitude", 0.3}, {"x", 1.0}, {"y", 0.0}, {"width", 0.7}}}}},
      {{"kind", "grid"}, {"x0", 0.0}, {"dx", 1.0}, {"nx", 2}, {"y0", 0.0}, {"dy", 1.0}, {"ny", 2},
       {"values", {1.0, 2.0, 3.0, 4.0}}},
  };
  for (const auto& doc : docs) {
    const auto spec = potential_from_json(doc);
    const auto again = potential_from_json(potential_to_json(spec));
    EXPECT_EQ(potential_to_json(again), potential_to_json(spec)) << doc.dump();
    for (auto [x, y] : {std::pair{0.2, 0.3}, {0.9, 0.1}, {-1.0, 2.0}}) EXPECT_DOUBLE_EQ(spec(x, y), again(x, y));
  }
}

TEST(PotentialIO, StrictSchema) {
  EXPECT_THROW(potential_from_json(json{{"kind", "zero"}, {"extra", 1}}), ConfigError);
  EXPECT_THROW(potential_from_json(json{{"kind", "nope"}}), ConfigError);
  EXPECT_THROW(potential_from_json(json{{"kind", "x_only"}}), ConfigError);
  EXPECT_THROW(potential_from_json(json{{"kind", "y_only"}, {"profile", {{"type", "cubic"}}}}), ConfigError);
  EXPECT_THROW(potential_from_json(json{{"kind", "x_only"}, {"coeffs", {{{"k", 1}, {"re", 1.0}, {"foo", 2}}}}}),
               ConfigError);
  EXPECT_THROW(potential_from_json(json::array()), ConfigError);
}

TEST(PotentialIO, GridCsv) {
  std::istringstream in("x,y,W\n1,0,2\n0,0,1\n0,0.5,3\n1,0.5,4\n");
  const auto g = parse_grid_csv(in);
  EXPECT_EQ(g.nx, 2u);
  EXPECT_EQ(g.ny, 2u);
  EXPECT_DOUBLE_EQ(g.dy, 0.5);
  EXPECT_EQ(g.values, (std::vector<double>{1, 2, 3, 4}));

  std::istringstream ragged("0,0,1\n1,0,2\n0,1,3\n");
  EXPECT_THROW(parse_grid_csv(ragged), ConfigError);
  std::istringstream uneven("0,0,1\n1,0,2\n3,0,2\n0,1,3\n1,1,3\n3,1,3\n");
  EXPECT_THROW(parse_grid_csv(uneven), ConfigError);
}

TEST(PotentialIO, GridCsvFileRelativeToConfig) {
  const auto dir = std::filesystem::temp_directory_path() / "channel_potential_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "w.csv");
    f << "0,0,1\n1,0,2\n0,1,3\n1,1,4\n";
  }
  const auto spec = potential_from_json(json{{"kind", "grid"}, {"csv", "w.csv"}}, dir);
  EXPECT_DOUBLE_EQ(spec(0.5, 0.5), 2.5);
  EXPECT_THROW(potential_from_json(json{{"kind", "grid"}, {"csv", "missing.csv"}}, dir), ConfigError);
  std::filesystem::remove_all(dir);
}
