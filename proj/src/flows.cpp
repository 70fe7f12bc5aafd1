#include "cauchy/flows.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "cauchy/errors.hpp"
#include "cauchy/parallel.hpp"

namespace cauchy {

namespace {

constexpr double kPi = 3.14159265358979323846;

Polynomial var(int v) { return Polynomial::variable(v); }
Polynomial cst(double c) { return Polynomial(Rational(c)); }

/// Fills defaults and rejects unknown keys.
Params resolve(const std::string& fixture, const Params& defaults, const Params& given) {
  Params out = defaults;
  for (const auto& [k, v] : given) {
    if (!defaults.count(k)) throw ConfigError("fixture '" + fixture + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw ConfigError("fixture parameter '" + k + "' must be finite");
    out[k] = v;
  }
  return out;
}

int grid_n(const Params& p) {
  const double n = p.at("n");
  if (n < 2 || n != std::floor(n)) throw ConfigError("grid resolution n must be an integer >= 2");
  return static_cast<int>(n);
}

Fixture identity_fixture(const Params& given) {
  Fixture f;
  f.params = resolve("identity", {{"n", 9}}, given);
  const Box box{{-10, -10, -10}, {10, 10, 10}};
  f.field = TrajectoryField::polynomial({var(0), var(1), var(2)}, box, 0, 10, "identity");
  f.material = FlowMaterial::standard(0.0);
  f.pressure = ScalarField::constant(0.0);
  f.extremal = true;
  f.labels_are_initial_positions = true;
  f.grid = LabelGrid::cube_cells(-1, 1, grid_n(f.params));
  f.description = "x = a";
  return f;
}

Fixture translation_fixture(const Params& given) {
  Fixture f;
  f.params = resolve("translation", {{"cx", 1}, {"cy", 0}, {"cz", 0}, {"n", 9}}, given);
  const Box box{{-10, -10, -10}, {10, 10, 10}};
  const auto& p = f.params;
  f.field = TrajectoryField::polynomial({var(0) + cst(p.at("cx")) * var(3), var(1) + cst(p.at("cy")) * var(3),
                                         var(2) + cst(p.at("cz")) * var(3)},
                                        box, 0, 10, "translation");
  f.material = FlowMaterial::standard(0.0);
  f.pressure = ScalarField::constant(0.0);
  f.extremal = true;
  f.labels_are_initial_positions = true;
  f.grid = LabelGrid::cube_cells(-1, 1, grid_n(f.params));
  f.description = "x = a + c t";
  return f;
}

Fixture shear_fixture(const Params& given) {
  Fixture f;
  f.params = resolve("shear", {{"s", 1}, {"n", 9}}, given);
  const Box box{{-1, -1, -1}, {1, 1, 1}};
  f.field = TrajectoryField::polynomial({var(0) + cst(f.params.at("s")) * var(3) * var(1), var(1), var(2)}, box, 0,
                                        10, "shear");
  f.material = FlowMaterial::standard(0.0);
  f.pressure = ScalarField::constant(0.0);
  f.extremal = true;  // steady parallel shear flow
  f.labels_are_initial_positions = true;
  f.planar = true;
  f.grid = LabelGrid::cube_cells(-1, 1, grid_n(f.params));
  f.description = "x = (a1 + s t a2, a2, a3)";
  return f;
}

Fixture rigid_rotation_fixture(const Params& given) {
  Fixture f;
  f.params = resolve("rigid-rotation", {{"omega", 1}, {"g", 9.81}, {"rho0", 1}, {"n", 9}}, given);
  const double w = f.params.at("omega"), g = f.params.at("g"), rho = f.params.at("rho0");
  if (!(rho > 0)) throw ConfigError("rho0 must be positive");
  const Box box{{-1, -1, -1}, {1, 1, 1}};
  f.field = TrajectoryField::analytic(
      [w](const auto& a, const auto& t) {
        using J = std::decay_t<decltype(t)>;
        const J c = cos(w * t), s = sin(w * t);
        return Vec3<J>(c * a[0] - s * a[1], s * a[0] + c * a[1], a[2]);
      },
      box, 0, 10, "rigid-rotation");
  f.material = FlowMaterial::standard(g);
  f.material.rho0 = ScalarField::constant(rho);
  f.pressure = ScalarField::from_expr([=](const auto& p, const auto&) {
    return rho * (0.5 * w * w * (p[0] * p[0] + p[1] * p[1])) - rho * g * p[2];
  });
  f.extremal = true;
  f.labels_are_initial_positions = true;
  f.planar = true;
  f.time_scale = w != 0 ? 2 * kPi / std::abs(w) : 1.0;
  f.grid = LabelGrid::cube_cells(-1, 1, grid_n(f.params));
  f.description = "rotation about e3 at rate omega";
  return f;
}

Fixture dilation_fixture(const Params& given) {
  Fixture f;
  f.params = resolve("dilation", {{"lambda", 1}, {"kappa", 1}, {"n", 9}}, given);
  const double lam = f.params.at("lambda"), kap = f.params.at("kappa");
  // scale s = 1 + lambda t + kappa t^2 a3 / 2 stays >= 1/2 on the window
  // below whenever lambda >= 0 and |kappa| <= 1
  if (lam < 0 || std::abs(kap) > 1) throw ConfigError("dilation: need lambda >= 0 and |kappa| <= 1");
  const Box box{{-1, -1, -1}, {1, 1, 1}};
  const Polynomial s = Polynomial(1) + cst(lam) * var(3) + cst(kap / 2) * var(3) * var(3) * var(2);
  f.field = TrajectoryField::polynomial({s * var(0), s * var(1), s * var(2)}, box, 0, 1, "dilation");
  f.material = FlowMaterial::standard(0.0);
  f.pressure = ScalarField::constant(0.0);
  f.extremal = false;
  f.labels_are_initial_positions = true;
  f.grid = LabelGrid::cube_cells(-1, 1, grid_n(f.params));
  f.description = "x = s a, s = 1 + lambda t + kappa t^2 a3 / 2";
  return f;
}

Fixture gerstner_fixture(const Params& given) {
  Fixture f;
  f.params = resolve("gerstner", {{"k", 1}, {"g", 9.81}, {"steepness", 0.5}, {"depth", 2}, {"n", 9}}, given);
  const double k = f.params.at("k"), g = f.params.at("g"), st = f.params.at("steepness");
  if (!(k > 0) || !(g > 0)) throw ConfigError("gerstner: k and g must be positive");
  if (!(st > 0) || !(st < 1)) throw ConfigError("gerstner: steepness exp(k b) must lie in (0, 1)");
  const double c = std::sqrt(g / k);
  const double L = 2 * kPi / k;
  const double b_hi = std::log(st) / k;
  const double b_lo = b_hi - f.params.at("depth") * L;
  if (!(b_lo < b_hi)) throw ConfigError("gerstner: depth must be positive");
  const Box box{{0, 0, b_lo}, {L, 1, b_hi}};
  const double T = L / c;
  f.field = TrajectoryField::analytic(
      [k, c](const auto& a, const auto& t) {
        using J = std::decay_t<decltype(t)>;
        const J th = k * (a[0] + c * t);
        const J e = exp(k * a[2]);
        return Vec3<J>(a[0] - (1.0 / k) * e * sin(th), J(a[1]), a[2] + (1.0 / k) * e * cos(th));
      },
      box, 0, 10 * T, "gerstner");
  f.material = FlowMaterial::standard(g);
  f.pressure = ScalarField::from_expr([k, g](const auto& p, const auto&) {
    return -g * (p[2] - (0.5 / k) * exp(2.0 * k * p[2]));
  });
  f.extremal = true;
  f.planar = true;
  f.time_scale = T;
  const int n = grid_n(f.params);
  f.grid = LabelGrid({GridAxis::cell_centers(0, L, n), GridAxis::cell_centers(0, 1, n),
                      GridAxis::cell_centers(b_lo, b_hi, n)});
  f.description = "Gerstner trochoidal wave, labels (a, y, b)";
  return f;
}

Fixture non_euler_fixture(const Params& given) {
  Fixture f;
  f.params = resolve("non-euler", {{"n", 9}}, given);
  const Box box{{0, 0, 0}, {1, 1, 1}};
  f.field = TrajectoryField::polynomial({var(0) + var(3) * var(3) * var(1) * var(1), var(1), var(2)}, box, 0, 1,
                                        "non-euler");
  f.material = FlowMaterial::standard(0.0);
  f.pressure = ScalarField::constant(0.0);
  f.extremal = false;
  f.labels_are_initial_positions = true;
  f.grid = LabelGrid::cube_cells(0, 1, grid_n(f.params));
  f.description = "x = (a1 + t^2 a2^2, a2, a3)";
  return f;
}

Fixture irrotational_fixture(const Params& given) {
  Fixture f;
  f.params = resolve("irrotational", {{"n", 9}}, given);
  const Box box{{0, 0, 0}, {1, 1, 1}};
  // x = a + t grad(phi), phi = a1 a2 a3 / 4
  const Polynomial q = cst(0.25);
  f.field = TrajectoryField::polynomial({var(0) + q * var(3) * var(1) * var(2), var(1) + q * var(3) * var(0) * var(2),
                                         var(2) + q * var(3) * var(0) * var(1)},
                                        box, 0, 1, "irrotational");
  f.material = FlowMaterial::standard(0.0);
  f.pressure = ScalarField::constant(0.0);
  f.extremal = true;  // pressureless: xddot = 0
  f.labels_are_initial_positions = true;
  f.grid = LabelGrid::cube_cells(0, 1, grid_n(f.params));
  f.description = "x = a + t grad(a1 a2 a3 / 4)";
  return f;
}

/// `eulerian_p(x, u(x))` is the steady pressure as a function of position.
using PressureOf = std::function<DJet(const JetVec<double>& x, const JetVec<double>& u)>;

Fixture advected_fixture(const std::string& name, const VectorField& u, double period, Params p,
                         PressureOf eulerian_p, bool planar) {
  Fixture f;
  f.params = std::move(p);
  const int n = grid_n(f.params);
  const double dt = f.params.at("dt"), t1 = f.params.at("t1");
  if (!(dt > 0) || !(t1 > 0)) throw ConfigError(name + ": dt and t1 must be positive");
  const int stride = std::max(1, static_cast<int>(std::lround(f.params.at("store_dt") / dt)));
  f.grid = LabelGrid::periodic_box(0, period, n);
  f.field = integrate_trajectories(u, f.grid, 0, t1, dt, {stride, true}, name);
  f.material = FlowMaterial::standard(0.0);
  auto field = f.field;
  f.pressure = ScalarField::from_expr([field, u, eulerian_p](const auto& p, const auto& t) {
    using P = std::decay_t<decltype(t)>;
    if constexpr (std::is_same_v<P, double>) {
      const Vec3d x = field.position(p, t);
      const JetVec<double> xj{DJet(x[0]), DJet(x[1]), DJet(x[2])};
      return eulerian_p(xj, u.jet(xj, DJet(t))).value();
    } else {
      const auto x = field.jet(values(p), t.value());
      return P(eulerian_p(x, u.jet(x, t)));
    }
  });
  f.extremal = true;
  f.labels_are_initial_positions = true;
  f.planar = planar;
  return f;
}

Fixture abc_fixture(const Params& given) {
  auto p = resolve("abc", {{"A", 1}, {"B", 1}, {"C", 1}, {"n", 16}, {"dt", 0.05}, {"t1", 1}, {"store_dt", 0.05}},
                   given);
  const double A = p.at("A"), B = p.at("B"), C = p.at("C");
  auto f = advected_fixture(
      "abc", abc_velocity(A, B, C), 2 * kPi, p,
      // Beltrami field: u x omega = 0, so p + |u|^2/2 is constant
      [](const JetVec<double>&, const JetVec<double>& v) { return DJet(-0.5) * dot(v, v); },
      false);
  f.description = "ABC flow trajectories (RK4), periodic box";
  return f;
}

Fixture taylor_green_fixture(const Params& given) {
  auto p = resolve("taylor-green", {{"n", 16}, {"dt", 0.05}, {"t1", 1}, {"store_dt", 0.05}}, given);
  auto f = advected_fixture(
      "taylor-green", taylor_green_velocity(), 2 * kPi, p,
      [](const JetVec<double>& x, const JetVec<double>&) {
        return DJet(0.25) * (cos(DJet(2.0) * x[0]) + cos(DJet(2.0) * x[1]));
      },
      true);
  f.description = "steady Taylor-Green cells (RK4), periodic box";
  return f;
}

}  // namespace

FixtureSpec FixtureSpec::parse(const std::string& text) {
  FixtureSpec s;
  const auto colon = text.find(':');
  s.name = text.substr(0, colon);
  if (colon == std::string::npos) return s;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("fixture parameter '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      s.params[key] = v;
    } catch (const std::exception&) {
      throw ConfigError("fixture parameter '" + key + "' has non-numeric value '" + val + "'");
    }
  }
  return s;
}

std::vector<std::string> fixture_names() {
  return {"identity", "translation", "shear",        "rigid-rotation", "dilation", "gerstner",
          "non-euler", "irrotational", "abc", "taylor-green"};
}

Fixture make_fixture(const FixtureSpec& spec) {
  Fixture f;
  if (spec.name == "identity") f = identity_fixture(spec.params);
  else if (spec.name == "translation") f = translation_fixture(spec.params);
  else if (spec.name == "shear") f = shear_fixture(spec.params);
  else if (spec.name == "rigid-rotation") f = rigid_rotation_fixture(spec.params);
  else if (spec.name == "dilation") f = dilation_fixture(spec.params);
  else if (spec.name == "gerstner") f = gerstner_fixture(spec.params);
  else if (spec.name == "non-euler") f = non_euler_fixture(spec.params);
  else if (spec.name == "irrotational") f = irrotational_fixture(spec.params);
  else if (spec.name == "abc") f = abc_fixture(spec.params);
  else if (spec.name == "taylor-green") f = taylor_green_fixture(spec.params);
  else throw ConfigError("unknown fixture '" + spec.name + "'");
  f.name = spec.name;
  return f;
}

Fixture make_fixture(const std::string& text) { return make_fixture(FixtureSpec::parse(text)); }

// ---- Eulerian fields ----------------------------------------------------------

VectorField abc_velocity(double A, double B, double C) {
  return VectorField::from_expr(
      [A, B, C](const auto& x, const auto&) {
        using S = std::decay_t<decltype(x[0])>;
        return Vec3<S>(A * sin(x[2]) + C * cos(x[1]), B * sin(x[0]) + A * cos(x[2]),
                       C * sin(x[1]) + B * cos(x[0]));
      },
      true);
}

VectorField taylor_green_velocity() {
  return VectorField::from_expr(
      [](const auto& x, const auto&) {
        using S = std::decay_t<decltype(x[0])>;
        return Vec3<S>(sin(x[0]) * cos(x[1]), -(cos(x[0]) * sin(x[1])), S(0.0));
      },
      true);
}

VectorField rigid_rotation_velocity(double omega0) {
  return VectorField::from_expr(
      [omega0](const auto& x, const auto&) {
        using S = std::decay_t<decltype(x[0])>;
        return Vec3<S>(-omega0 * x[1], omega0 * x[0], S(0.0));
      },
      true);
}

// ---- integration ------------------------------------------------------------------

namespace {

void check_inside(const VectorField& u, const Vec3d& x) {
  if (u.domain() && !u.domain()->contains(x, 1e-12))
    throw DomainError("trajectory left the velocity field's domain");
}

template <class V, class Eval>
V rk4_step(const V& x, double t, double h, const Eval& eval) {
  const V k1 = eval(x, t);
  const V k2 = eval(x + (0.5 * h) * k1, t + 0.5 * h);
  const V k3 = eval(x + (0.5 * h) * k2, t + 0.5 * h);
  const V k4 = eval(x + h * k3, t + h);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Extends a label-only jet at time t to a full (a, t) jet by Picard
/// iteration of x(a, t + s) = x(a, t) + int_0^s u(x, t + s') ds'.
JetVec<double> picard_extend(const VectorField& u, const JetVec<double>& X, double t) {
  const DJet tj = DJet::variable(Coord::t, t);
  JetVec<double> y = X;
  for (int it = 0; it < DJet::kOrder + 1; ++it) {
    const auto v = u.jet(y, tj);
    for (int i = 0; i < 3; ++i) y[i] = X[i] + v[i].integral(Coord::t);
  }
  return y;
}

}  // namespace

Vec3d integrate_point(const VectorField& u, const Vec3d& a, double t0, double t1, double dt) {
  if (!(dt > 0)) throw ConfigError("integration step must be positive");
  const long n = std::max(1L, std::lround(std::ceil((t1 - t0) / dt - 1e-9)));
  const double h = (t1 - t0) / n;
  Vec3d x = a;
  auto eval = [&u](const Vec3d& y, double s) {
    check_inside(u, y);
    return u.value(y, s);
  };
  for (long k = 0; k < n; ++k) x = rk4_step(x, t0 + k * h, h, eval);
  return x;
}

TrajectoryField integrate_trajectories(const VectorField& u, const LabelGrid& grid, double t0, double t1, double dt,
                                       IntegrateOptions opts, std::string name) {
  if (!(dt > 0)) throw ConfigError("integration step must be positive");
  if (!(t1 > t0)) throw ConfigError("integration window must have t1 > t0");
  if (opts.store_every < 1) throw ConfigError("store_every must be >= 1");
  if (opts.propagate_jets && !u.has_jet()) throw ConfigError("jet propagation needs a velocity field with jets");
  const long n = std::max(1L, std::lround(std::ceil((t1 - t0) / dt - 1e-9)));
  const double h = (t1 - t0) / n;

  auto s = std::make_shared<SampledTrajectories>();
  s->grid = grid;
  s->fd_order = 4;
  std::vector<long> stored;
  for (long k = 0; k <= n; ++k)
    if (k % opts.store_every == 0 || k == n) stored.push_back(k);
  for (long k : stored) s->times.push_back(k == n ? t1 : t0 + k * h);
  const std::size_t m = grid.size();
  s->positions.assign(stored.size(), std::vector<Vec3d>(m));
  if (opts.propagate_jets) s->jets.assign(stored.size(), std::vector<JetVec<double>>(m));

  parallel_for(m, [&](std::size_t node) {
    const Vec3d a = grid.label(node);
    std::size_t slot = 0;
    if (opts.propagate_jets) {
      JetVec<double> X(DJet::variable(Coord::a1, a[0]), DJet::variable(Coord::a2, a[1]),
                       DJet::variable(Coord::a3, a[2]));
      auto eval = [&u](const JetVec<double>& y, double t) {
        check_inside(u, values(y));
        return u.jet(y, DJet(t));
      };
      for (long k = 0; k <= n; ++k) {
        if (slot < stored.size() && stored[slot] == k) {
          const double t = s->times[slot];
          s->jets[slot][node] = picard_extend(u, X, t);
          s->positions[slot][node] = values(X);
          ++slot;
        }
        if (k < n) X = rk4_step(X, t0 + k * h, h, eval);
      }
    } else {
      Vec3d x = a;
      auto eval = [&u](const Vec3d& y, double t) {
        check_inside(u, y);
        return u.value(y, t);
      };
      for (long k = 0; k <= n; ++k) {
        if (slot < stored.size() && stored[slot] == k) s->positions[slot][node] = x, ++slot;
        if (k < n) x = rk4_step(x, t0 + k * h, h, eval);
      }
    }
  });
  return TrajectoryField::sampled(std::move(s), std::move(name));
}

}  // namespace cauchy
