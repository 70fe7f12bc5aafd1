#include "cauchy/label_grid.hpp"

#include <sstream>
#include <stdexcept>

namespace cauchy {

GridAxis GridAxis::nodes(double lo, double hi, int n) {
  auto r = quad::trapezoid(lo, hi, n);
  return GridAxis{std::move(r.nodes), std::move(r.weights), false, 0.0};
}

GridAxis GridAxis::cell_centers(double lo, double hi, int n) {
  auto r = quad::midpoint(lo, hi, n);
  return GridAxis{std::move(r.nodes), std::move(r.weights), false, 0.0};
}

GridAxis GridAxis::gauss_legendre(double lo, double hi, int n, int panels) {
  auto r = quad::gauss_legendre(lo, hi, n, panels);
  return GridAxis{std::move(r.nodes), std::move(r.weights), false, 0.0};
}

GridAxis GridAxis::periodic_cells(double lo, double period, int n) {
  // nodes at lo + i h so that labels coincide with a uniform periodic lattice
  if (n < 2 || !(period > 0)) throw std::invalid_argument("periodic axis: bad arguments");
  GridAxis ax;
  const double h = period / n;
  for (int i = 0; i < n; ++i) {
    ax.coords.push_back(lo + i * h);
    ax.widths.push_back(h);
  }
  ax.periodic = true;
  ax.period = period;
  return ax;
}

double GridAxis::lower() const { return coords.front(); }

double GridAxis::upper() const {
  if (periodic) return coords.front() + period;
  return coords.back();
}

LabelGrid::LabelGrid(std::array<GridAxis, 3> axes) : axes_(std::move(axes)) {
  for (const auto& ax : axes_) {
    if (ax.coords.empty() || ax.coords.size() != ax.widths.size())
      throw std::invalid_argument("LabelGrid: axis coordinates and widths must be nonempty and match");
    for (std::size_t i = 0; i < ax.coords.size(); ++i) {
      if (!(ax.widths[i] > 0)) throw std::invalid_argument("LabelGrid: nonpositive cell width");
      if (i > 0 && !(ax.coords[i] > ax.coords[i - 1]))
        throw std::invalid_argument("LabelGrid: coordinates must be strictly increasing");
    }
    if (ax.periodic && !(ax.coords.back() < ax.coords.front() + ax.period))
      throw std::invalid_argument("LabelGrid: periodic axis exceeds its period");
  }
}

LabelGrid LabelGrid::cube_cells(double lo, double hi, int n) {
  const auto ax = GridAxis::cell_centers(lo, hi, n);
  return LabelGrid({ax, ax, ax});
}

LabelGrid LabelGrid::cube_nodes(double lo, double hi, int n) {
  const auto ax = GridAxis::nodes(lo, hi, n);
  return LabelGrid({ax, ax, ax});
}

LabelGrid LabelGrid::box_gauss(const Vec3d& lo, const Vec3d& hi, int n, int panels) {
  return LabelGrid({GridAxis::gauss_legendre(lo[0], hi[0], n, panels),
                    GridAxis::gauss_legendre(lo[1], hi[1], n, panels),
                    GridAxis::gauss_legendre(lo[2], hi[2], n, panels)});
}

LabelGrid LabelGrid::periodic_box(double lo, double period, int n) {
  const auto ax = GridAxis::periodic_cells(lo, period, n);
  return LabelGrid({ax, ax, ax});
}

std::size_t LabelGrid::size() const {
  return static_cast<std::size_t>(axes_[0].size()) * axes_[1].size() * axes_[2].size();
}

std::size_t LabelGrid::flat(int i, int j, int k) const {
  return (static_cast<std::size_t>(i) * axes_[1].size() + j) * axes_[2].size() + k;
}

std::array<int, 3> LabelGrid::unflat(std::size_t idx) const {
  const std::size_t n2 = axes_[2].size(), n1 = axes_[1].size();
  return {static_cast<int>(idx / (n1 * n2)), static_cast<int>((idx / n2) % n1), static_cast<int>(idx % n2)};
}

Vec3d LabelGrid::label(std::size_t idx) const {
  const auto [i, j, k] = unflat(idx);
  return {axes_[0].coords[i], axes_[1].coords[j], axes_[2].coords[k]};
}

double LabelGrid::weight(std::size_t idx) const {
  const auto [i, j, k] = unflat(idx);
  return axes_[0].widths[i] * axes_[1].widths[j] * axes_[2].widths[k];
}

double LabelGrid::total_volume() const {
  double v = 1.0;
  for (const auto& ax : axes_) {
    double s = 0.0;
    for (double w : ax.widths) s += w;
    v *= s;
  }
  return v;
}

std::string LabelGrid::describe() const {
  std::ostringstream os;
  os << axes_[0].size() << "x" << axes_[1].size() << "x" << axes_[2].size();
  os << " [" << axes_[0].lower() << "," << axes_[0].upper() << "]x[" << axes_[1].lower() << ","
     << axes_[1].upper() << "]x[" << axes_[2].lower() << "," << axes_[2].upper() << "]";
  if (axes_[0].periodic || axes_[1].periodic || axes_[2].periodic) os << " periodic";
  return os.str();
}

}  // namespace cauchy
