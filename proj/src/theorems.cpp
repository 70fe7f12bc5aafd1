#include "cauchy/theorems.hpp"

#include <cmath>

#include "cauchy/parallel.hpp"
#include "cauchy/quadrature.hpp"

namespace cauchy {

// ---- theorems ------------------------------------------------------------------------

Vec3d specific_vorticity(const TrajectoryField& f, const FlowMaterial& m, const Vec3d& a, double t) {
  const auto x = f.jet(a, t);
  const auto b = bundle_from_jet(x);
  const Vec3d Omega = values(curl(image_velocity_jet(x)));
  const double mass = mass_density_jet(f, m, a).value();  // rho J
  if (!(mass / b.Jdet > 0)) throw PhysicsError("density from map is not positive");
  return (1.0 / mass) * (b.Jmat * Omega);
}

Vec3d beltrami_residual(const TrajectoryField& f, const FlowMaterial& m, const Vec3d& a, double t, double dt_fd) {
  if (!(dt_fd > 0)) throw ConfigError("Beltrami time step must be positive");
  const Vec3d dq = (1.0 / (2 * dt_fd)) * (specific_vorticity(f, m, a, t + dt_fd) - specific_vorticity(f, m, a, t - dt_fd));
  const auto x = f.jet(a, t);
  const auto b = bundle_from_jet(x);
  // L(i, k) = du_i/dx_k = (d[J]/dt [J]^{-1})(i, k)
  const Mat3d L = jacobian_values(time_derivative(x)) * b.inv;
  return dq - L * specific_vorticity(f, m, a, t);
}

double ertel_pv(const TrajectoryField& f, const FlowMaterial& m, const ScalarField& S, const Vec3d& a, double t) {
  const auto b = jacobian(f, a, t);
  const Vec3d gradS_x = transpose(b.inv) * grad_label(S, a, f.t0());
  return dot(specific_vorticity(f, m, a, t), gradS_x);
}

double ertel_pv_label(const TrajectoryField& f, const FlowMaterial& m, const ScalarField& S, const Vec3d& a,
                      double t) {
  const double mass = mass_density_jet(f, m, a).value();
  if (!(mass > 0)) throw PhysicsError("density from map is not positive");
  return dot(lagrangian_vorticity(f, a, t), grad_label(S, a, f.t0())) / mass;
}

DriftReport ertel_drift(const TrajectoryField& f, const FlowMaterial& m, const ScalarField& S, const LabelGrid& grid,
                        std::span<const double> times) {
  auto rep = field_drift(PointScalarFn([&](const Vec3d& a, double t) { return ertel_pv(f, m, S, a, t); }), grid,
                         times, "ertel");
  rep.metadata["field"] = f.name();
  return rep;
}

double circulation(const TrajectoryField& f, const LabelLoop& loop, double t) {
  loop.validate();
  const int n = loop.nodes;
  const auto terms = parallel_map<double>(n, [&](std::size_t k) {
    const double s = static_cast<double>(k) / n;
    return dot(image_velocity(f, loop.point(s), t), loop.tangent(s)) / n;
  });
  return quad::pairwise_sum(terms);
}

DriftReport circulation_drift(const TrajectoryField& f, const LabelLoop& loop, std::span<const double> times) {
  auto rep = scalar_drift([&](double t) { return circulation(f, loop, t); }, times, "circulation");
  rep.metadata["field"] = f.name();
  rep.metadata["loop_nodes"] = std::to_string(loop.nodes);
  return rep;
}

double helicity(const TrajectoryField& f, const LabelRegion& region, double t) {
  const auto& g = region.grid;
  const auto terms = parallel_map<double>(g.size(), [&](std::size_t i) {
    const auto x = f.jet(g.label(i), t);
    const auto V = image_velocity_jet(x);
    return g.weight(i) * dot(values(curl(V)), values(V));
  });
  return quad::pairwise_sum(terms);
}

Tangency boundary_tangency(const TrajectoryField& f, const LabelRegion& region, double t) {
  Tangency r;
  if (region.periodic) return r;
  std::vector<double> flux;
  for (const auto& face : region.faces)
    for (std::size_t i = 0; i < face.nodes.size(); ++i) {
      const double on = std::abs(dot(lagrangian_vorticity(f, face.nodes[i], t), face.normal));
      r.max_abs = std::max(r.max_abs, on);
      flux.push_back(on * face.ds[i]);
    }
  r.flux = quad::pairwise_sum(flux);
  return r;
}

DriftReport helicity_drift(const TrajectoryField& f, const LabelRegion& region, std::span<const double> times) {
  auto rep = scalar_drift([&](double t) { return helicity(f, region, t); }, times, "helicity");
  rep.metadata["field"] = f.name();
  rep.metadata["grid"] = region.grid.describe();
  if (!times.empty()) {
    const auto tg = boundary_tangency(f, region, times.front());
    rep.metadata["boundary"] = region.periodic ? "periodic" : "faces";
    rep.metadata["tangency_max"] = format_number(tg.max_abs);
    rep.metadata["tangency_flux"] = format_number(tg.flux);
  }
  return rep;
}

}  // namespace cauchy
