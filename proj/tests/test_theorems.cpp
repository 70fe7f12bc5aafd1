#include <doctest.h>

#include <cmath>

#include "cauchy/flows.hpp"
#include "cauchy/theorems.hpp"

using namespace cauchy;

namespace {

Polynomial var(int v) { return Polynomial::variable(v); }
const Vec3d e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};

}  // namespace

TEST_CASE("loops and regions validate their geometry") {
  CHECK_THROWS_AS(LabelLoop::circle({0, 0, 0}, 1, e1, e2, 4), ConfigError);
  auto sq = LabelLoop::polygon({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, 64);
  CHECK(norm(sq.point(0.25) - Vec3d{1, 0, 0}) < 1e-14);
  LabelLoop open;
  open.point = [](double s) { return Vec3d{s, 0, 0}; };
  open.tangent = [](double) { return Vec3d{1, 0, 0}; };
  CHECK_THROWS_AS(open.validate(), ConfigError);

  auto box = LabelRegion::box({0, 0, 0}, {1, 2, 3}, 4);
  CHECK(box.faces.size() == 6);
  CHECK(box.divergence_self_test() < 1e-12);
  auto gb = LabelRegion::box_gauss({-1, -1, -1}, {1, 1, 1}, 3);
  CHECK(gb.divergence_self_test() < 1e-12);
}

TEST_CASE("D'Alembert-Euler residual") {
  auto tr = make_fixture("translation");
  CHECK(dalembert_euler_residual<Rational>(tr.field, {Rational(0), Rational(1, 2), Rational(0)}, Rational(1)) ==
        Vec3<Rational>());
  auto ger = make_fixture("gerstner");
  for (std::size_t i = 0; i < ger.grid.size(); i += 41) {
    const Vec3d a = ger.grid.label(i);
    CHECK(norm(dalembert_euler_residual(ger.field, a, 0.3 * ger.time_scale)) < 1e-8);
    CHECK(norm(dalembert_euler_eulerian(ger.field, a, 0.3 * ger.time_scale)) < 1e-8);
  }
  // non-Euler map: both routes agree exactly and equal ([J]/J) curl_a dV/dt
  auto ne = make_fixture("non-euler");
  const Vec3<Rational> a(Rational(1, 3), Rational(2, 3), Rational(1, 2));
  const Rational t(3, 4);
  const auto r = dalembert_euler_residual<Rational>(ne.field, a, t);
  CHECK(r != Vec3<Rational>());
  CHECK(r == dalembert_euler_eulerian<Rational>(ne.field, a, t));
  const auto b = jacobian<Rational>(ne.field, a, t);
  CHECK(r == Rational(1) / b.Jdet * (b.Jmat * cauchy_residual<Rational>(ne.field, a, t)));
}

TEST_CASE("D'Alembert-Euler routes agree on analytic fields") {
  auto dil = make_fixture("dilation");
  double worst = 0;
  for (std::size_t i = 0; i < dil.grid.size(); i += 7) {
    const Vec3d a = dil.grid.label(i);
    const Vec3d r1 = dalembert_euler_residual(dil.field, a, 0.6);
    const Vec3d r2 = dalembert_euler_eulerian(dil.field, a, 0.6);
    worst = std::max(worst, norm(r1 - r2) / std::max(1.0, norm(r1)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Beltrami residual") {
  auto tr = make_fixture("translation");
  CHECK(norm(beltrami_residual(tr.field, tr.material, {0.1, 0.2, 0.3}, 1.0, 1e-3)) < 1e-14);
  auto rot = make_fixture("rigid-rotation:omega=1.3");
  CHECK(norm(beltrami_residual(rot.field, rot.material, {0.4, -0.2, 0.3}, 2.0, 1e-3)) < 1e-8);
  auto ger = make_fixture("gerstner");
  CHECK(norm(beltrami_residual(ger.field, ger.material, ger.grid.label(300), 0.2 * ger.time_scale, 1e-3)) < 1e-8);
  CHECK_THROWS_AS(beltrami_residual(rot.field, rot.material, {0.4, -0.2, 0.3}, 2.0, 0.0), ConfigError);
}

TEST_CASE("Beltrami residual on ABC trajectories converges at second order in dt_fd") {
  auto grid = LabelGrid::periodic_box(0, 2 * M_PI, 3);
  auto f = integrate_trajectories(abc_velocity(), grid, 0, 1, 0.01);
  FlowMaterial m;
  double r[3];
  const double h[3] = {0.08, 0.04, 0.02};
  for (int k = 0; k < 3; ++k) {
    r[k] = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) r[k] = std::max(r[k], norm(beltrami_residual(f, m, grid.label(i), 0.5, h[k])));
  }
  MESSAGE("Beltrami residuals " << r[0] << " " << r[1] << " " << r[2]);
  const double s1 = std::log(r[0] / r[1]) / std::log(2.0), s2 = std::log(r[1] / r[2]) / std::log(2.0);
  CHECK(s1 >= 1.8);
  CHECK(s2 >= 1.8);
}

TEST_CASE("Ertel potential vorticity") {
  auto rot = make_fixture("rigid-rotation:omega=0.8");
  const auto S = ScalarField::from_polynomial(var(2));
  const auto C = ScalarField::constant(3.0);
  CHECK(ertel_pv(rot.field, rot.material, C, {0.1, 0.2, 0.3}, 1.0) == 0);
  CHECK(ertel_pv(rot.field, rot.material, S, {0.1, 0.2, 0.3}, 1.0) == doctest::Approx(1.6));
  CHECK(ertel_pv_label(rot.field, rot.material, S, {0.1, 0.2, 0.3}, 1.0) == doctest::Approx(1.6));
  auto rep = ertel_drift(rot.field, rot.material, S, rot.grid, linspace(0, 10, 5));
  CHECK(rep.max_drift() < 1e-12);

  auto ger = make_fixture("gerstner");
  auto rg = ertel_drift(ger.field, ger.material, S, ger.grid, linspace(0, ger.time_scale, 9));
  CHECK(rg.max_drift() < 1e-8);
  // both forms agree
  const Vec3d a = ger.grid.label(123);
  CHECK(ertel_pv(ger.field, ger.material, S, a, 0.3) ==
        doctest::Approx(ertel_pv_label(ger.field, ger.material, S, a, 0.3)).epsilon(1e-12));
}

TEST_CASE("circulation") {
  auto id = make_fixture("identity");
  auto loop = LabelLoop::circle({0, 0, 0}, 0.5, e1, e2, 16);
  CHECK(circulation(id.field, loop, 1.0) == 0);

  auto rot = make_fixture("rigid-rotation");
  auto unit = LabelLoop::circle({0, 0, 0}, 1.0, e1, e2, 32);
  auto rep = circulation_drift(rot.field, unit, linspace(0, 10, 11));
  for (const auto& r : rep.rows) CHECK(std::abs(r.value - 2 * M_PI) < 1e-8);
  CHECK(rep.max_drift() < 1e-8);

  auto ger = make_fixture("gerstner");
  const double L = 2 * M_PI, bh = std::log(0.5);
  auto sq = LabelLoop::polygon({{1, 0.5, bh - 2}, {1 + L / 4, 0.5, bh - 2}, {1 + L / 4, 0.5, bh - 0.5}, {1, 0.5, bh - 0.5}},
                               256);
  auto rg = circulation_drift(ger.field, sq, linspace(0, ger.time_scale, 9));
  CHECK(std::abs(rg.rows[0].value) > 1e-3);
  CHECK(rg.max_drift() < 1e-8);
}

TEST_CASE("Stokes consistency for small loops") {
  auto ger = make_fixture("gerstner");
  const Vec3d c{1.0, 0.5, std::log(0.5) - 1.0};
  const double t = 0.37;
  const Vec3d W = lagrangian_vorticity(ger.field, c, t);
  double prev = 0;
  for (double r : {0.2, 0.1, 0.05}) {
    // loop in the (a1, a3) plane, normal e1 x e3 = -e2
    const double G = circulation(ger.field, LabelLoop::circle(c, r, e1, e3, 64), t);
    const double flux = dot(W, cross(e1, e3)) * M_PI * r * r;
    const double rel = std::abs(G - flux) / std::abs(flux);
    if (prev > 0) CHECK(prev / rel > 3.5);
    prev = rel;
  }
}

TEST_CASE("flux equivalence Omega.ds = omega.(cof ds)") {
  auto ger = make_fixture("gerstner");
  double worst = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const Vec3d a = ger.grid.label((i * 37) % ger.grid.size());
    const double t = 0.01 * i;
    const Vec3d ds{std::sin(1.0 * i), std::cos(2.0 * i), 0.3};
    const auto b = jacobian(ger.field, a, t);
    const Vec3d W = lagrangian_vorticity(ger.field, a, t);
    const Vec3d w = eulerian_vorticity(ger.field, a, t);
    worst = std::max(worst, std::abs(dot(W, ds) - dot(w, b.cof * ds)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("helicity of planar flows vanishes") {
  auto rot = make_fixture("rigid-rotation");
  auto reg = LabelRegion::box({-1, -1, -1}, {1, 1, 1}, 6);
  CHECK(std::abs(helicity(rot.field, reg, 1.0)) < 1e-12);
  auto id = make_fixture("identity");
  CHECK(helicity(id.field, reg, 0.5) == 0);
  // rotation: Omega = 2 e3 is tangent to the side faces but crosses top/bottom
  auto tg = boundary_tangency(rot.field, reg, 0.0);
  CHECK(tg.max_abs == doctest::Approx(2.0));
  CHECK(tg.flux == doctest::Approx(2.0 * 2 * 4));
  auto tgf = make_fixture("taylor-green:n=8,t1=0.5,dt=0.05,store_dt=0.25");
  auto preg = LabelRegion::periodic_cell(tgf.grid);
  CHECK(std::abs(helicity(tgf.field, preg, 0.5)) < 1e-10);
  CHECK(boundary_tangency(tgf.field, preg, 0.5).flux == 0);
}

TEST_CASE("ABC helicity matches the Eulerian oracle and drifts at integration error") {
  const int n = 16;
  auto fx = make_fixture("abc:n=16,dt=0.05,t1=1,store_dt=0.5");
  auto reg = LabelRegion::periodic_cell(fx.grid);
  // Eulerian oracle: int |u|^2 dV on the matched grid (omega = u)
  auto u = abc_velocity();
  double oracle = 0;
  for (std::size_t i = 0; i < fx.grid.size(); ++i) {
    const Vec3d v = u.value(fx.grid.label(i), 0);
    oracle += fx.grid.weight(i) * dot(v, v);
  }
  const double H0 = helicity(fx.field, reg, 0.0);
  CHECK(std::abs(oracle - 3 * std::pow(2 * M_PI, 3)) / oracle < 1e-12);
  CHECK(std::abs(H0 - oracle) / oracle < 5e-3);
  auto rep = helicity_drift(fx.field, reg, std::vector<double>{0.0, 0.5, 1.0});

  // integration error estimate from a dt/2 run
  auto fine = integrate_trajectories(u, fx.grid, 0, 1, 0.025, {40, false});
  double err = 0;
  for (std::size_t i = 0; i < fx.grid.size(); ++i)
    err = std::max(err, norm(fx.field.position(fx.grid.label(i), 1.0) - fine.position(fx.grid.label(i), 1.0)));
  MESSAGE("helicity drift " << rep.max_drift() << " (relative " << rep.max_drift() / H0 << "), position error " << err);
  CHECK(rep.max_drift() / std::abs(H0) <= 10 * err);
  (void)n;
}
