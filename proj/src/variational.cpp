#include "cauchy/variational.hpp"

#include <cmath>

#include "cauchy/parallel.hpp"
#include "cauchy/quadrature.hpp"

namespace cauchy {

double mass_residual(const TrajectoryField& f, const FlowMaterial& m, const ScalarField& rho, const Vec3d& a,
                     double t) {
  const double J = jacobian(f, a, t).Jdet;
  const double J0 = jacobian(f, a, f.t0()).Jdet;
  return rho.value(a, t) * J - m.rho0.value(a, f.t0()) * J0;
}

double lagrangian_density(const TrajectoryField& f, const FlowMaterial& m, const Vec3d& a, double t) {
  const auto s = f.eval_state(a, t);
  const double rho = density_from_map<double>(f, m, a, t);
  const double J0 = jacobian(f, a, f.t0()).Jdet;
  const double mass = m.rho0.value(a, f.t0()) * J0;
  return (0.5 * dot(s.xdot, s.xdot) - m.eos.E(rho) - m.potential.value(s.x, t)) * mass;
}

double action(const TrajectoryField& f, const FlowMaterial& m, const TimeWindow& w, const LabelGrid& grid) {
  const auto tr = w.rule();
  const std::size_t n = grid.size(), nt = tr.nodes.size();
  const auto terms = parallel_map<double>(n * nt, [&](std::size_t k) {
    const std::size_t i = k / nt, q = k % nt;
    return tr.weights[q] * grid.weight(i) * lagrangian_density(f, m, grid.label(i), tr.nodes[q]);
  });
  return quad::pairwise_sum(terms);
}

}  // namespace cauchy
