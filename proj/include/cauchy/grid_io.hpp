#pragma once

// Trajectory grid files for the sampled backend.
//
// Both formats carry the same content: three uniform axes (size, kind,
// origin, spacing), the time stamps, the finite-difference order, then the
// positions x(a, t) for every time slice with labels in row-major order
// (a1 slowest, a3 fastest). Axis kinds:
//   nodes     coords origin + i h, trapezoid weights (ends at the box faces)
//   cells     cell centres origin + i h, midpoint weights
//   periodic  origin + i h on a period of n h
//
// CSV (text):
//   # cauchy-grid v1
//   axes,<n1>,<n2>,<n3>
//   kind,<k1>,<k2>,<k3>
//   origin,<o1>,<o2>,<o3>
//   spacing,<h1>,<h2>,<h3>
//   fd_order,<2|4>
//   times,<t0>,<t1>,...
//   x1,x2,x3
//   <one row per (slice, node)>
//
// Binary (little-endian as written by the host):
//   char[8] "CIGRID01"; uint32 n1, n2, n3, nt; uint8 kind[3]; uint8 fd_order;
//   float64 origin[3], spacing[3], times[nt]; float64 x[nt][n1 n2 n3][3].

#include <iosfwd>
#include <span>
#include <string>

#include "cauchy/trajectory_field.hpp"

namespace cauchy::grid_io {

enum class Format { csv, binary };

/// Throws ConfigError when an axis is not uniform.
void write(const SampledTrajectories& s, std::ostream& out, Format fmt);
/// Detects the format from the first bytes. Throws ConfigError on malformed input.
SampledTrajectories read(std::istream& in);

void save(const SampledTrajectories& s, const std::string& path, Format fmt);
SampledTrajectories load(const std::string& path);
/// Sampled field backed by the file at `path`.
TrajectoryField load_field(const std::string& path);

/// Positions of `f` on `grid` at `times`, ready to be written.
SampledTrajectories sample(const TrajectoryField& f, const LabelGrid& grid, std::span<const double> times,
                           int fd_order = 4);

}  // namespace cauchy::grid_io
