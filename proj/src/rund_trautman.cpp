#include <cmath>

#include "cauchy/parallel.hpp"
#include "cauchy/variational.hpp"

namespace cauchy {

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Gauss-Jordan inverse with partial pivoting; returns the determinant.
double invert4(Mat4 m, Mat4& inv) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv[i][j] = i == j ? 1.0 : 0.0;
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int p = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (m[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(m[p], m[c]);
      std::swap(inv[p], inv[c]);
      det = -det;
    }
    const double d = m[c][c];
    det *= d;
    for (int j = 0; j < 4; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == c || m[r][c] == 0.0) continue;
      const double s = m[r][c];
      for (int j = 0; j < 4; ++j) {
        m[r][j] -= s * m[c][j];
        inv[r][j] -= s * inv[c][j];
      }
    }
  }
  return det;
}

/// Columns d/da1, d/da2, d/da3, d/dt of a vector jet.
std::array<Vec3d, 4> space_time_gradient(const JetVec<double>& v) {
  std::array<Vec3d, 4> g;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 3; ++i) g[j][i] = v[i].derivative(static_cast<Coord>(j)).value();
  return g;
}

struct Lagrangian {
  const TrajectoryField& f;
  const FlowMaterial& m;
  const std::optional<ScalarField>& pressure;

  double mass(const Vec3d& a) const { return mass_density_jet(f, m, a).value(); }

  /// Density at (a, t) for configuration values x, xdot, F = grad_a x.
  double operator()(const Vec3d& a, double t, const Vec3d& x, const Vec3d& xdot, const Mat3d& F) const {
    const double mu = mass(a), J = determinant(F);
    if (!(J > 0)) throw PhysicsError("transformed map is not orientation preserving");
    double l = mu * (0.5 * dot(xdot, xdot) - m.eos.E(mu / J) - m.potential.value(x, t));
    if (pressure) l += pressure->value(a, t) * (J - jacobian(f, a, f.t0()).Jdet);
    return l;
  }

  double p(const Vec3d& a, double t) const {
    if (pressure) return pressure->value(a, t);
    return m.eos.pressure(density_from_map<double>(f, m, a, t));
  }
};

void check_pressure_model(const FlowMaterial& m, const std::optional<ScalarField>& pressure) {
  if (pressure && m.eos.name() != "none")
    throw ConfigError("an explicit pressure field requires the incompressible material (eos none)");
}

std::vector<double> transformed_terms(const Lagrangian& L, const VariationTriple& v, const TimeWindow& w,
                                      const LabelGrid& grid, double eps) {
  const auto tr = w.rule();
  const std::size_t n = grid.size(), nt = tr.nodes.size();
  return parallel_map<double>(n * nt, [&](std::size_t k) {
    const std::size_t i = k / nt, q = k % nt;
    const Vec3d a = grid.label(i);
    const double t = tr.nodes[q];
    const auto x = L.f.jet(a, t);
    const auto vj = v.eval(a, t);
    // Phi(a, t) = (a + eps da, t + eps dt) and y = x + eps dx as functions of (a, t)
    const auto gda = space_time_gradient(vj.da);
    const auto gx = space_time_gradient(x);
    const auto gdx = space_time_gradient(vj.dx);
    Mat4 D;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const double dv = r < 3 ? gda[c][r] : vj.dt.derivative(static_cast<Coord>(c)).value();
        D[r][c] = (r == c ? 1.0 : 0.0) + eps * dv;
      }
    Mat4 Di;
    const double det = invert4(D, Di);
    if (!(det > 0)) throw PhysicsError("transformed map is not bijective at the quadrature nodes");
    // D(x~) = Dy D(Phi)^{-1}
    std::array<Vec3d, 4> M{};
    for (int c = 0; c < 4; ++c)
      for (int l = 0; l < 4; ++l) M[c] = M[c] + Di[l][c] * (gx[l] + eps * gdx[l]);
    Mat3d F;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) F(r, c) = M[c][r];
    const Vec3d at = a + eps * values(vj.da);
    const double tt = t + eps * vj.dt.value();
    const Vec3d y = values(x) + eps * values(vj.dx);
    return tr.weights[q] * grid.weight(i) * det * L(at, tt, y, M[3], F);
  });
}

double boundary_brace(const Lagrangian& L, const VariationTriple& v, const TimeWindow& w, const LabelRegion& region) {
  std::vector<double> parts;
  const auto& grid = region.grid;
  // time endpoints: [int (L dt + mass xdot . dx_local) dV]_{t0}^{t1}
  for (int side = 0; side < 2; ++side) {
    const double t = side == 0 ? w.t0 : w.t1, sign = side == 0 ? -1.0 : 1.0;
    const auto e = parallel_map<double>(grid.size(), [&](std::size_t i) {
      const Vec3d a = grid.label(i);
      const auto x = L.f.jet(a, t);
      const Vec3d xd = time_derivative_values(x);
      const double l = L(a, t, values(x), xd, jacobian_values(x));
      const double wi = grid.weight(i);
      return sign * wi * (l * v.eval(a, t).dt.value() + L.mass(a) * dot(xd, local_variation(L.f, v, a, t)));
    });
    parts.insert(parts.end(), e.begin(), e.end());
  }
  // faces: int dt oint (L da + p cof^T dx_local) . n ds
  const auto tr = w.rule();
  for (const auto& face : region.faces) {
    const std::size_t nf = face.nodes.size(), nt = tr.nodes.size();
    const auto e = parallel_map<double>(nf * nt, [&](std::size_t k) {
      const std::size_t i = k / nt, q = k % nt;
      const Vec3d& a = face.nodes[i];
      const double t = tr.nodes[q];
      const auto x = L.f.jet(a, t);
      const auto b = bundle_from_jet(x);
      const double l = L(a, t, values(x), time_derivative_values(x), b.Jmat);
      const Vec3d flux = l * values(v.eval(a, t).da) + L.p(a, t) * (transpose(b.cof) * local_variation(L.f, v, a, t));
      return tr.weights[q] * face.ds[i] * dot(flux, face.normal);
    });
    parts.insert(parts.end(), e.begin(), e.end());
  }
  return quad::pairwise_sum(parts);
}

}  // namespace

VariationTriple VariationTriple::zero() {
  VariationTriple v;
  v.name = "zero";
  v.eval = [](const Vec3d&, double) { return VariationJets{DJet(0.0), JetVec<double>(), JetVec<double>()}; };
  return v;
}

VariationTriple VariationTriple::relabeling(const RelabelGenerator& g) {
  VariationTriple v;
  v.name = "relabel:" + g.name;
  v.eval = [g](const Vec3d& a, double) { return VariationJets{DJet(0.0), relabel_delta_a_jet(g, a), JetVec<double>()}; };
  return v;
}

VariationTriple VariationTriple::time_translation(double tau) {
  VariationTriple v;
  v.name = "time-translation";
  v.eval = [tau](const Vec3d&, double) { return VariationJets{DJet(tau), JetVec<double>(), JetVec<double>()}; };
  return v;
}

VariationTriple VariationTriple::from_fields(ScalarField dt, VectorField da, VectorField dx, std::string name) {
  VariationTriple v;
  v.name = std::move(name);
  v.eval = [dt, da, dx](const Vec3d& a, double t) {
    const auto [aj, tj] = coordinate_jets(a, t);
    return VariationJets{dt.jet(aj, tj), da.jet(aj, tj), dx.jet(aj, tj)};
  };
  return v;
}

Vec3d local_variation(const TrajectoryField& f, const VariationTriple& v, const Vec3d& a, double t) {
  const auto x = f.jet(a, t);
  const auto vj = v.eval(a, t);
  return values(vj.dx) - vj.dt.value() * time_derivative_values(x) - jacobian_values(x) * values(vj.da);
}

RundTrautman rund_trautman_check(const TrajectoryField& f, const FlowMaterial& m,
                                 const std::optional<ScalarField>& pressure, const VariationTriple& v,
                                 const TimeWindow& w, const LabelRegion& region, double eps) {
  if (!(eps > 0)) throw ConfigError("Rund-Trautman step must be positive");
  check_pressure_model(m, pressure);
  const Lagrangian L{f, m, pressure};
  const auto& grid = region.grid;
  RundTrautman r;
  auto terms = transformed_terms(L, v, w, grid, eps);
  const auto base = transformed_terms(L, v, w, grid, 0.0);
  for (std::size_t k = 0; k < terms.size(); ++k) terms[k] -= base[k];
  r.total = quad::pairwise_sum(terms) / eps;

  const auto tr = w.rule();
  const std::size_t n = grid.size(), nt = tr.nodes.size();
  const auto el = parallel_map<double>(n * nt, [&](std::size_t k) {
    const std::size_t i = k / nt, q = k % nt;
    const Vec3d a = grid.label(i);
    const double t = tr.nodes[q];
    return -tr.weights[q] * grid.weight(i) *
           dot(momentum_residual<double>(f, m, pressure, a, t), local_variation(f, v, a, t));
  });
  r.el_part = quad::pairwise_sum(el);
  r.bd_part = boundary_brace(L, v, w, region);
  return r;
}

double noether_boundary_term(const TrajectoryField& f, const FlowMaterial& m, const std::optional<ScalarField>& pressure,
                             const VariationTriple& v, const TimeWindow& w, const LabelRegion& region) {
  check_pressure_model(m, pressure);
  return boundary_brace(Lagrangian{f, m, pressure}, v, w, region);
}

}  // namespace cauchy
