#include "cauchy/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "cauchy/parallel.hpp"
#include "cauchy/quadrature.hpp"

namespace cauchy {

Vec3d cauchy_vorticity_reconstruct(const TrajectoryField& f, const VectorField& omega0, const Vec3d& a, double t) {
  return cauchy_vorticity_reconstruct(f, omega0.value(a, f.t0()), a, t);
}

std::vector<double> linspace(double t0, double t1, int n) {
  if (n < 1) throw std::invalid_argument("linspace: need at least one point");
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = n == 1 ? t0 : t0 + (t1 - t0) * i / (n - 1);
  if (n > 1) r.back() = t1;
  return r;
}

namespace {

template <class Q, class Dist, class Norm>
DriftReport drift_impl(const Q& q, const LabelGrid& grid, std::span<const double> times, std::string theorem,
                       const Dist& dist, const Norm& norm) {
  DriftReport rep;
  rep.theorem = std::move(theorem);
  rep.metadata["grid"] = grid.describe();
  rep.metadata["nodes"] = std::to_string(grid.size());
  if (times.empty()) return rep;
  using V = decltype(q(grid.label(0), times[0]));
  const std::size_t n = grid.size();
  const auto ref = parallel_map<V>(n, [&](std::size_t i) { return q(grid.label(i), times[0]); });
  for (double t : times) {
    const auto cur = parallel_map<V>(n, [&](std::size_t i) { return q(grid.label(i), t); });
    std::vector<double> dev2(n), val2(n), devs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = dist(cur[i], ref[i]);
      devs[i] = d;
      dev2[i] = grid.weight(i) * d * d;
      const double v = norm(cur[i]);
      val2[i] = grid.weight(i) * v * v;
    }
    DriftRow row;
    row.t = t;
    row.value = std::sqrt(quad::pairwise_sum(val2));
    row.max_dev = devs.empty() ? 0.0 : *std::max_element(devs.begin(), devs.end());
    row.l2_dev = std::sqrt(quad::pairwise_sum(dev2));
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace

DriftReport field_drift(const PointVectorFn& q, const LabelGrid& grid, std::span<const double> times,
                        std::string theorem) {
  return drift_impl(
      q, grid, times, std::move(theorem), [](const Vec3d& x, const Vec3d& y) { return norm(x - y); },
      [](const Vec3d& x) { return norm(x); });
}

DriftReport field_drift(const PointScalarFn& q, const LabelGrid& grid, std::span<const double> times,
                        std::string theorem) {
  return drift_impl(
      q, grid, times, std::move(theorem), [](double x, double y) { return std::abs(x - y); },
      [](double x) { return std::abs(x); });
}

DriftReport scalar_drift(const std::function<double(double)>& q, std::span<const double> times,
                         std::string theorem) {
  DriftReport rep;
  rep.theorem = std::move(theorem);
  if (times.empty()) return rep;
  const auto vals = parallel_map<double>(times.size(), [&](std::size_t i) { return q(times[i]); });
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double d = std::abs(vals[i] - vals[0]);
    rep.rows.push_back({times[i], vals[i], d, d});
  }
  return rep;
}

DriftReport cauchy_drift(const TrajectoryField& f, const LabelGrid& grid, std::span<const double> times) {
  auto rep = field_drift(
      PointVectorFn([&f](const Vec3d& a, double t) { return lagrangian_vorticity(f, a, t); }), grid, times,
      "cauchy");
  rep.metadata["field"] = f.name();
  rep.metadata["backend"] = to_string(f.backend());
  rep.metadata["fd_order"] = std::to_string(f.fd_order());
  return rep;
}

}  // namespace cauchy
