#pragma once

// CSV and JSON formats:
//   samples      x,y
//   density grid x,y,density     (x outer, y inner)
//   study        n,replication,seed,h,T,ise,runtime_ms
//   density spec {"components": [{"weight": w, "center": [x, y],
//                                 "sigma": s}, ...]}

#include "estimator.hpp"
#include "experiments.hpp"
#include "geometry.hpp"
#include "sampling.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypkde::io {

namespace detail {

inline std::string
format_real(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<std::string>
split(const std::string& line, char sep)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep))
    out.push_back(field);
  if (!line.empty() && line.back() == sep)
    out.emplace_back();
  return out;
}

inline std::string
trim(std::string s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double
parse_real(const std::string& field, std::size_t line_no)
{
  const std::string t = trim(field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.size())
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": not a number: '" + t + "'");
  return v;
}

//! Reads a header line and checks it against `expected`.
inline void
expect_header(std::istream& in, const std::string& expected)
{
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty CSV, expected header '" + expected + "'");
  if (trim(line) != expected)
    throw std::runtime_error("bad CSV header '" + trim(line) +
                             "', expected '" + expected + "'");
}

template<typename Fn>
void
for_each_row(std::istream& in, std::size_t columns, Fn&& fn)
{
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty())
      continue;
    const auto fields = split(trim(line), ',');
    if (fields.size() != columns)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected " + std::to_string(columns) +
                               " fields, got " +
                               std::to_string(fields.size()));
    fn(fields, line_no);
  }
}

inline std::ofstream
open_out(const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

inline std::ifstream
open_in(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

} // namespace detail

inline void
write_samples(std::ostream& out, std::span<const HPoint> samples)
{
  out << "x,y\n";
  for (const auto& z : samples)
    out << detail::format_real(z.x()) << ',' << detail::format_real(z.y())
        << '\n';
}

inline std::vector<HPoint>
read_samples(std::istream& in)
{
  detail::expect_header(in, "x,y");
  std::vector<HPoint> out;
  detail::for_each_row(in, 2, [&](const auto& f, std::size_t line_no) {
    const double x = detail::parse_real(f[0], line_no);
    const double y = detail::parse_real(f[1], line_no);
    try {
      out.emplace_back(x, y);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                               e.what());
    }
  });
  return out;
}

inline void
write_grid(std::ostream& out, const DensityGrid& grid)
{
  out << "x,y,density\n";
  const GridSpec& g = grid.spec;
  for (std::size_t ix = 0; ix < g.nx; ++ix)
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      const HPoint z = g.node(ix, iy);
      out << detail::format_real(z.x()) << ',' << detail::format_real(z.y())
          << ',' << detail::format_real(grid.at(ix, iy)) << '\n';
    }
}

//! Reads the (x, y, density) triples of a grid CSV in file order.
inline std::vector<std::array<double, 3>>
read_grid_rows(std::istream& in)
{
  detail::expect_header(in, "x,y,density");
  std::vector<std::array<double, 3>> rows;
  detail::for_each_row(in, 3, [&](const auto& f, std::size_t line_no) {
    rows.push_back({ detail::parse_real(f[0], line_no),
                     detail::parse_real(f[1], line_no),
                     detail::parse_real(f[2], line_no) });
  });
  return rows;
}

inline constexpr const char* records_header =
  "n,replication,seed,h,T,ise,runtime_ms";

inline void
write_records(std::ostream& out, std::span<const ExperimentRecord> records)
{
  out << records_header << '\n';
  for (const auto& r : records)
    out << r.n << ',' << r.replication << ',' << r.seed << ','
        << detail::format_real(r.h) << ',' << detail::format_real(r.T) << ','
        << detail::format_real(r.ise) << ','
        << detail::format_real(r.runtime_ms) << '\n';
}

inline std::vector<ExperimentRecord>
read_records(std::istream& in)
{
  detail::expect_header(in, records_header);
  std::vector<ExperimentRecord> out;
  detail::for_each_row(in, 7, [&](const auto& f, std::size_t line_no) {
    ExperimentRecord r;
    try {
      r.n = std::stol(detail::trim(f[0]));
      r.replication = std::stoi(detail::trim(f[1]));
      r.seed = std::stoull(detail::trim(f[2]));
    } catch (const std::exception&) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": bad integer field");
    }
    r.h = detail::parse_real(f[3], line_no);
    r.T = detail::parse_real(f[4], line_no);
    r.ise = detail::parse_real(f[5], line_no);
    r.runtime_ms = detail::parse_real(f[6], line_no);
    out.push_back(r);
  });
  return out;
}

inline MixtureDensity
parse_density_spec(const nlohmann::json& spec)
{
  if (!spec.is_object() || !spec.contains("components") ||
      !spec["components"].is_array())
    throw std::runtime_error("density spec: missing 'components' array");
  std::vector<MixtureComponent> components;
  for (const auto& c : spec["components"]) {
    if (!c.contains("weight") || !c.contains("center") ||
        !c.contains("sigma"))
      throw std::runtime_error(
        "density spec: each component needs weight, center and sigma");
    const auto& center = c["center"];
    if (!center.is_array() || center.size() != 2)
      throw std::runtime_error("density spec: center must be [x, y]");
    try {
      components.push_back(
        { c["weight"].get<double>(),
          RiemannianGaussian(
            HPoint(center[0].get<double>(), center[1].get<double>()),
            c["sigma"].get<double>()) });
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(std::string("density spec: ") + e.what());
    }
  }
  return MixtureDensity(std::move(components));
}

inline MixtureDensity
read_density_spec(std::istream& in)
{
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("density spec: ") + e.what());
  }
  return parse_density_spec(spec);
}

inline MixtureDensity
load_density_spec(const std::string& path)
{
  auto in = detail::open_in(path);
  return read_density_spec(in);
}

inline std::vector<HPoint>
load_samples(const std::string& path)
{
  auto in = detail::open_in(path);
  return read_samples(in);
}

inline void
save_samples(const std::string& path, std::span<const HPoint> samples)
{
  auto out = detail::open_out(path);
  write_samples(out, samples);
}

inline void
save_grid(const std::string& path, const DensityGrid& grid)
{
  auto out = detail::open_out(path);
  write_grid(out, grid);
}

inline void
save_records(const std::string& path,
             std::span<const ExperimentRecord> records)
{
  auto out = detail::open_out(path);
  write_records(out, records);
}

} // namespace hypkde::io
