#include "cauchy/grid_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cauchy/errors.hpp"
#include "cauchy/report.hpp"

namespace cauchy::grid_io {

namespace {

constexpr char kMagic[8] = {'C', 'I', 'G', 'R', 'I', 'D', '0', '1'};
constexpr const char* kCsvHeader = "# cauchy-grid v1";

enum class Kind : std::uint8_t { nodes = 0, cells = 1, periodic = 2 };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::nodes: return "nodes";
    case Kind::cells: return "cells";
    case Kind::periodic: return "periodic";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "nodes") return Kind::nodes;
  if (s == "cells") return Kind::cells;
  if (s == "periodic") return Kind::periodic;
  throw ConfigError("grid file: unknown axis kind '" + s + "'");
}

struct AxisInfo {
  std::uint32_t n = 0;
  Kind kind = Kind::nodes;
  double origin = 0.0;
  double spacing = 0.0;
};

AxisInfo describe_axis(const GridAxis& ax) {
  const int n = ax.size();
  if (n < 2) throw ConfigError("grid file: every axis needs at least two nodes");
  AxisInfo info;
  info.n = static_cast<std::uint32_t>(n);
  info.origin = ax.coords[0];
  info.spacing = (ax.coords[n - 1] - ax.coords[0]) / (n - 1);
  const double h = info.spacing;
  for (int i = 0; i < n; ++i)
    if (std::abs(ax.coords[i] - (info.origin + i * h)) > 1e-12 * (1.0 + std::abs(ax.coords[i])))
      throw ConfigError("grid file: axes must be uniform");
  if (ax.periodic)
    info.kind = Kind::periodic;
  else if (std::abs(ax.widths[0] - 0.5 * h) < 1e-12 * h)
    info.kind = Kind::nodes;
  else
    info.kind = Kind::cells;
  return info;
}

GridAxis rebuild_axis(const AxisInfo& a) {
  if (a.n < 2 || !(a.spacing > 0) || !std::isfinite(a.origin))
    throw ConfigError("grid file: invalid axis (size >= 2 and spacing > 0 required)");
  const int n = static_cast<int>(a.n);
  const double h = a.spacing;
  GridAxis ax;
  switch (a.kind) {
    case Kind::nodes:
      ax = GridAxis::nodes(a.origin, a.origin + (n - 1) * h, n);
      break;
    case Kind::cells:
      ax = GridAxis::cell_centers(a.origin - 0.5 * h, a.origin - 0.5 * h + n * h, n);
      break;
    case Kind::periodic:
      ax = GridAxis::periodic_cells(a.origin, n * h, n);
      break;
  }
  // keep the stored coordinates bit-for-bit
  for (int i = 0; i < n; ++i) ax.coords[i] = a.origin + i * h;
  return ax;
}

void check_consistent(const SampledTrajectories& s) {
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid file: ") + e.what());
  }
}

template <class T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ConfigError("grid file: truncated binary data");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("grid file: bad number '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("grid file: bad number '" + s + "'");
  return v;
}

std::vector<std::string> expect_row(std::istream& in, const std::string& key, std::size_t min_fields) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("grid file: missing '" + key + "' line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto f = split(line);
  if (f.empty() || f[0] != key || f.size() < min_fields + 1)
    throw ConfigError("grid file: expected '" + key + "' line, got '" + line + "'");
  f.erase(f.begin());
  return f;
}

SampledTrajectories read_csv(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ConfigError("grid file: missing '# cauchy-grid v1' header");
  std::array<AxisInfo, 3> ax;
  const auto sizes = expect_row(in, "axes", 3);
  const auto kinds = expect_row(in, "kind", 3);
  const auto origin = expect_row(in, "origin", 3);
  const auto spacing = expect_row(in, "spacing", 3);
  for (int d = 0; d < 3; ++d) {
    const double n = to_number(sizes[d]);
    if (n != std::floor(n) || n < 2) throw ConfigError("grid file: axis sizes must be integers >= 2");
    ax[d] = {static_cast<std::uint32_t>(n), parse_kind(kinds[d]), to_number(origin[d]), to_number(spacing[d])};
  }
  SampledTrajectories s;
  s.fd_order = static_cast<int>(to_number(expect_row(in, "fd_order", 1)[0]));
  for (const auto& t : expect_row(in, "times", 1)) s.times.push_back(to_number(t));
  s.grid = LabelGrid({rebuild_axis(ax[0]), rebuild_axis(ax[1]), rebuild_axis(ax[2])});
  if (!std::getline(in, line) || split(line).size() != 3) throw ConfigError("grid file: missing column header");
  const std::size_t n = s.grid.size();
  s.positions.assign(s.times.size(), std::vector<Vec3d>(n));
  for (auto& slice : s.positions)
    for (auto& x : slice) {
      if (!std::getline(in, line)) throw ConfigError("grid file: fewer position rows than grid nodes x times");
      const auto f = split(line);
      if (f.size() != 3) throw ConfigError("grid file: position rows need three columns");
      x = Vec3d(to_number(f[0]), to_number(f[1]), to_number(f[2]));
    }
  while (std::getline(in, line))
    if (!line.empty() && line != "\r") throw ConfigError("grid file: trailing data after positions");
  check_consistent(s);
  return s;
}

SampledTrajectories read_binary(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) throw ConfigError("grid file: bad magic");
  std::array<AxisInfo, 3> ax;
  for (auto& a : ax) a.n = get<std::uint32_t>(in);
  const std::uint32_t nt = get<std::uint32_t>(in);
  for (auto& a : ax) {
    const auto k = get<std::uint8_t>(in);
    if (k > 2) throw ConfigError("grid file: unknown axis kind");
    a.kind = static_cast<Kind>(k);
  }
  SampledTrajectories s;
  s.fd_order = get<std::uint8_t>(in);
  for (auto& a : ax) a.origin = get<double>(in);
  for (auto& a : ax) a.spacing = get<double>(in);
  for (std::uint32_t i = 0; i < nt; ++i) s.times.push_back(get<double>(in));
  s.grid = LabelGrid({rebuild_axis(ax[0]), rebuild_axis(ax[1]), rebuild_axis(ax[2])});
  s.positions.assign(nt, std::vector<Vec3d>(s.grid.size()));
  for (auto& slice : s.positions)
    for (auto& x : slice)
      for (int d = 0; d < 3; ++d) x[d] = get<double>(in);
  if (in.peek() != std::char_traits<char>::eof()) throw ConfigError("grid file: trailing data after positions");
  check_consistent(s);
  return s;
}

}  // namespace

void write(const SampledTrajectories& s, std::ostream& out, Format fmt) {
  check_consistent(s);
  std::array<AxisInfo, 3> ax;
  for (int d = 0; d < 3; ++d) ax[d] = describe_axis(s.grid.axis(d));
  if (fmt == Format::csv) {
    out << kCsvHeader << "\n";
    out << "axes," << ax[0].n << "," << ax[1].n << "," << ax[2].n << "\n";
    out << "kind," << kind_name(ax[0].kind) << "," << kind_name(ax[1].kind) << "," << kind_name(ax[2].kind) << "\n";
    out << "origin," << format_number(ax[0].origin) << "," << format_number(ax[1].origin) << ","
        << format_number(ax[2].origin) << "\n";
    out << "spacing," << format_number(ax[0].spacing) << "," << format_number(ax[1].spacing) << ","
        << format_number(ax[2].spacing) << "\n";
    out << "fd_order," << s.fd_order << "\n";
    out << "times";
    for (double t : s.times) out << "," << format_number(t);
    out << "\nx1,x2,x3\n";
    for (const auto& slice : s.positions)
      for (const auto& x : slice)
        out << format_number(x[0]) << "," << format_number(x[1]) << "," << format_number(x[2]) << "\n";
    return;
  }
  out.write(kMagic, 8);
  for (const auto& a : ax) put(out, a.n);
  put(out, static_cast<std::uint32_t>(s.times.size()));
  for (const auto& a : ax) put(out, static_cast<std::uint8_t>(a.kind));
  put(out, static_cast<std::uint8_t>(s.fd_order));
  for (const auto& a : ax) put(out, a.origin);
  for (const auto& a : ax) put(out, a.spacing);
  for (double t : s.times) put(out, t);
  for (const auto& slice : s.positions)
    for (const auto& x : slice)
      for (int d = 0; d < 3; ++d) put(out, x[d]);
}

SampledTrajectories read(std::istream& in) {
  const int c = in.peek();
  if (c == 'C') return read_binary(in);
  if (c == '#') return read_csv(in);
  throw ConfigError("grid file: unrecognised format");
}

void save(const SampledTrajectories& s, const std::string& path, Format fmt) {
  std::ofstream out(path, fmt == Format::binary ? std::ios::binary : std::ios::out);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write(s, out, fmt);
  if (!out) throw ConfigError("error writing '" + path + "'");
}

SampledTrajectories load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open grid file '" + path + "'");
  return read(in);
}

TrajectoryField load_field(const std::string& path) {
  return TrajectoryField::sampled(std::make_shared<const SampledTrajectories>(load(path)), path);
}

SampledTrajectories sample(const TrajectoryField& f, const LabelGrid& grid, std::span<const double> times,
                           int fd_order) {
  SampledTrajectories s;
  s.grid = grid;
  s.times.assign(times.begin(), times.end());
  s.fd_order = fd_order;
  for (double t : times) {
    std::vector<Vec3d> slice(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) slice[i] = f.position(grid.label(i), t);
    s.positions.push_back(std::move(slice));
  }
  check_consistent(s);
  return s;
}

}  // namespace cauchy::grid_io
