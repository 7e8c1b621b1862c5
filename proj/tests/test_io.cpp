#include <hypkde/io.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <vector>

using namespace hypkde;

TEST(SamplesCsv, RoundTripIsExact)
{
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal(0.0, 3.0);
  std::vector<HPoint> samples;
  for (int i = 0; i < 200; ++i)
    samples.emplace_back(normal(rng), std::exp(normal(rng)));
  std::stringstream buf;
  io::write_samples(buf, samples);
  EXPECT_EQ(io::read_samples(buf), samples);
}

TEST(SamplesCsv, Errors)
{
  std::stringstream bad_header("u,v\n0,1\n");
  EXPECT_THROW(io::read_samples(bad_header), std::runtime_error);
  std::stringstream bad_number("x,y\n0,abc\n");
  EXPECT_THROW(io::read_samples(bad_number), std::runtime_error);
  std::stringstream bad_point("x,y\n0,-1\n");
  EXPECT_THROW(io::read_samples(bad_point), std::runtime_error);
  std::stringstream short_row("x,y\n0\n");
  EXPECT_THROW(io::read_samples(short_row), std::runtime_error);
  std::stringstream empty("");
  EXPECT_THROW(io::read_samples(empty), std::runtime_error);
  std::stringstream blank_lines("x,y\n\n0.5, 2\n\n");
  EXPECT_EQ(io::read_samples(blank_lines), std::vector<HPoint>{ HPoint(0.5, 2.0) });
}

TEST(GridCsv, LayoutIsXOuter)
{
  const GridSpec g{ 0.0, 2.0, 1.0, 3.0, 2, 2 };
  DensityGrid grid{ g, { 1.0, 2.0, 3.0, 4.0 } };
  std::stringstream buf;
  io::write_grid(buf, grid);
  EXPECT_EQ(buf.str(), "x,y,density\n0.5,1.5,1\n0.5,2.5,2\n1.5,1.5,3\n1.5,2.5,4\n");
  const auto rows = io::read_grid_rows(buf);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[2][0], 1.5);
  EXPECT_EQ(rows[2][2], 3.0);
}

TEST(RecordsCsv, RoundTripIsExact)
{
  std::vector<ExperimentRecord> records{
    { 50, 0, 18446744073709551615ULL, 0.5, 1.9, 0.0123456789012345678, 12.5 },
    { 1600, 9, 1, 1.0 / 3.0, 3.3, 1e-7, 0.25 },
  };
  std::stringstream buf;
  io::write_records(buf, records);
  EXPECT_EQ(io::read_records(buf), records);

  std::stringstream bad("n,replication,seed,h,T,ise,runtime_ms\nx,0,1,1,1,1,1\n");
  EXPECT_THROW(io::read_records(bad), std::runtime_error);
}

TEST(DensitySpec, Parses)
{
  std::stringstream in(R"({"components": [
    {"weight": 0.3, "center": [-1, 1], "sigma": 0.4},
    {"weight": 0.7, "center": [0.5, 2], "sigma": 0.6}]})");
  const auto m = io::read_density_spec(in);
  ASSERT_EQ(m.components().size(), 2u);
  EXPECT_EQ(m.components()[1].weight, 0.7);
  EXPECT_EQ(m.components()[1].gaussian.center(), HPoint(0.5, 2.0));
  EXPECT_EQ(m.components()[0].gaussian.sigma(), 0.4);
}

TEST(DensitySpec, Errors)
{
  const auto parse = [](const char* text) {
    std::stringstream in(text);
    return io::read_density_spec(in);
  };
  EXPECT_THROW(parse("{"), std::runtime_error);
  EXPECT_THROW(parse(R"({"parts": []})"), std::runtime_error);
  EXPECT_THROW(parse(R"({"components": [{"weight": 1, "sigma": 1}]})"),
               std::runtime_error);
  EXPECT_THROW(
    parse(R"({"components": [{"weight": 1, "center": [0], "sigma": 1}]})"),
    std::runtime_error);
  EXPECT_THROW(
    parse(R"({"components": [{"weight": "a", "center": [0, 1], "sigma": 1}]})"),
    std::runtime_error);
  EXPECT_THROW(
    parse(R"({"components": [{"weight": 1, "center": [0, -1], "sigma": 1}]})"),
    std::invalid_argument);
  EXPECT_THROW(
    parse(R"({"components": [{"weight": 0.5, "center": [0, 1], "sigma": 1}]})"),
    std::invalid_argument);
  EXPECT_THROW(io::load_density_spec("/nonexistent/spec.json"),
               std::runtime_error);
}
