#include "cauchy/region.hpp"

#include <cmath>

#include "cauchy/errors.hpp"
#include "cauchy/quadrature.hpp"

namespace cauchy {

namespace {
constexpr double kTwoPi = 6.283185307179586476925;
}

// ---- loops ------------------------------------------------------------------------

LabelLoop LabelLoop::circle(const Vec3d& c, double r, const Vec3d& e1, const Vec3d& e2, int nodes) {
  LabelLoop l;
  l.point = [=](double s) { return c + (r * std::cos(kTwoPi * s)) * e1 + (r * std::sin(kTwoPi * s)) * e2; };
  l.tangent = [=](double s) {
    return (-kTwoPi * r * std::sin(kTwoPi * s)) * e1 + (kTwoPi * r * std::cos(kTwoPi * s)) * e2;
  };
  l.nodes = nodes;
  l.validate();
  return l;
}

LabelLoop LabelLoop::polygon(std::vector<Vec3d> v, int nodes) {
  if (v.size() < 3) throw ConfigError("polygon loop needs at least three vertices");
  const int m = static_cast<int>(v.size());
  auto locate = [m](double s, int& edge, double& sigma) {
    s -= std::floor(s);
    const double pos = s * m;
    edge = std::min(m - 1, static_cast<int>(pos));
    sigma = pos - edge;
  };
  LabelLoop l;
  l.point = [v, m, locate](double s) {
    int e;
    double sg;
    locate(s, e, sg);
    const double u = sg - std::sin(kTwoPi * sg) / kTwoPi;
    return v[e] + u * (v[(e + 1) % m] - v[e]);
  };
  l.tangent = [v, m, locate](double s) {
    int e;
    double sg;
    locate(s, e, sg);
    const double du = (1.0 - std::cos(kTwoPi * sg)) * m;
    return du * (v[(e + 1) % m] - v[e]);
  };
  l.nodes = nodes;
  l.validate();
  return l;
}

LabelLoop LabelLoop::periodic_line(const Vec3d& start, const Vec3d& period, int nodes) {
  if (norm(period) == 0.0) throw ConfigError("periodic line needs a nonzero period");
  LabelLoop l;
  l.point = [start, period](double s) { return start + s * period; };
  l.tangent = [period](double) { return period; };
  l.nodes = nodes;
  l.wrap = period;
  l.validate();
  return l;
}

void LabelLoop::validate() const {
  if (nodes < 8) throw ConfigError("loop quadrature needs at least 8 nodes");
  if (!point || !tangent) throw ConfigError("loop has no parametrisation");
  const Vec3d gap = point(0.0) + wrap - point(1.0);
  if (norm(gap) > 1e-12 * (1.0 + norm(point(0.0)))) throw ConfigError("loop is not closed");
}

// ---- regions ----------------------------------------------------------------------

namespace {

LabelRegion make_box(const Vec3d& lo, const Vec3d& hi, std::array<quad::Rule, 3> r, LabelGrid grid) {
  LabelRegion reg;
  reg.grid = std::move(grid);
  for (int d = 0; d < 3; ++d) {
    const int p = (d + 1) % 3, q = (d + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      BoundaryFace face;
      face.normal[d] = side == 0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < r[p].nodes.size(); ++i)
        for (std::size_t j = 0; j < r[q].nodes.size(); ++j) {
          Vec3d x;
          x[d] = side == 0 ? lo[d] : hi[d];
          x[p] = r[p].nodes[i];
          x[q] = r[q].nodes[j];
          face.nodes.push_back(x);
          face.ds.push_back(r[p].weights[i] * r[q].weights[j]);
        }
      reg.faces.push_back(std::move(face));
    }
  }
  return reg;
}

}  // namespace

LabelRegion LabelRegion::box(const Vec3d& lo, const Vec3d& hi, int n) {
  std::array<quad::Rule, 3> r{quad::midpoint(lo[0], hi[0], n), quad::midpoint(lo[1], hi[1], n),
                              quad::midpoint(lo[2], hi[2], n)};
  LabelGrid g({GridAxis::cell_centers(lo[0], hi[0], n), GridAxis::cell_centers(lo[1], hi[1], n),
               GridAxis::cell_centers(lo[2], hi[2], n)});
  return make_box(lo, hi, r, std::move(g));
}

LabelRegion LabelRegion::box_gauss(const Vec3d& lo, const Vec3d& hi, int n, int panels) {
  std::array<quad::Rule, 3> r{quad::gauss_legendre(lo[0], hi[0], n, panels),
                              quad::gauss_legendre(lo[1], hi[1], n, panels),
                              quad::gauss_legendre(lo[2], hi[2], n, panels)};
  return make_box(lo, hi, r, LabelGrid::box_gauss(lo, hi, n, panels));
}

LabelRegion LabelRegion::periodic_cell(const LabelGrid& grid) {
  for (int d = 0; d < 3; ++d)
    if (!grid.axis(d).periodic) throw ConfigError("periodic region needs a fully periodic grid");
  LabelRegion reg;
  reg.grid = grid;
  reg.periodic = true;
  return reg;
}

double LabelRegion::divergence_self_test() const {
  // v = (a1 + 2 a2, 3 a2 - a3, a1 - a3), div v = 3
  auto v = [](const Vec3d& a) { return Vec3d(a[0] + 2 * a[1], 3 * a[1] - a[2], a[0] - a[2]); };
  std::vector<double> vol(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vol[i] = 3.0 * grid.weight(i);
  std::vector<double> flux;
  for (const auto& f : faces)
    for (std::size_t i = 0; i < f.nodes.size(); ++i) flux.push_back(dot(v(f.nodes[i]), f.normal) * f.ds[i]);
  if (periodic) return 0.0;
  return std::abs(quad::pairwise_sum(vol) - quad::pairwise_sum(flux));
}

}  // namespace cauchy
