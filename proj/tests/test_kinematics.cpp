#include <doctest.h>

#include <chrono>
#include <cmath>

#include "cauchy/flows.hpp"
#include "cauchy/kinematics.hpp"

using namespace cauchy;

namespace {

const Box kBox{{-5, -5, -5}, {5, 5, 5}};
Polynomial var(int v) { return Polynomial::variable(v); }

TrajectoryField dilation2() {
  return TrajectoryField::polynomial({Polynomial(2) * var(0), Polynomial(2) * var(1), Polynomial(2) * var(2)}, kBox, 0,
                                     10, "x=2a");
}
TrajectoryField shear() {
  return TrajectoryField::polynomial({var(0) + var(3) * var(1), var(1), var(2)}, kBox, 0, 10, "shear");
}
TrajectoryField identity() { return TrajectoryField::polynomial({var(0), var(1), var(2)}, kBox, 0, 10, "identity"); }

const Vec3<Rational> kA(Rational(1, 2), Rational(-1, 3), Rational(2));

template <class M>
bool all_zero(const M& m) {
  for (const auto& x : m.m)
    if (x != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("jacobian examples") {
  auto b = jacobian<Rational>(identity(), kA, Rational(1));
  CHECK(b.Jdet == 1);
  CHECK(b.cof(0, 0) == 1);
  CHECK(b.inv(1, 1) == 1);
  CHECK(b.cof(0, 1) == 0);

  auto d = jacobian<Rational>(dilation2(), kA, Rational(0));
  CHECK(d.Jdet == 8);
  CHECK(d.cof(0, 0) == 4);
  CHECK(d.cof(1, 1) == 4);
  CHECK(d.cof(0, 2) == 0);

  auto s = jacobian<Rational>(shear(), kA, Rational(3));
  CHECK(s.Jdet == 1);
  CHECK(s.Jmat(0, 1) == 3);
  CHECK(s.Jmat(1, 0) == 0);
  CHECK(s.cof == transpose(s.inv));  // J = 1
}

TEST_CASE("bundle invariants hold to 1e-12 on analytic fixtures") {
  for (const char* name : {"rigid-rotation", "gerstner"}) {
    auto fx = make_fixture(name);
    for (std::size_t i = 0; i < fx.grid.size(); i += 37) {
      auto b = jacobian(fx.field, fx.grid.label(i), 0.37 * fx.time_scale);
      CHECK(bundle_consistency(b) < 1e-12);
    }
  }
}

TEST_CASE("degenerate maps are rejected") {
  auto flat = TrajectoryField::polynomial({var(0), var(0), var(2)}, kBox, 0, 1);
  CHECK_THROWS_AS(jacobian<Rational>(flat, kA, Rational(0)), DegenerateMapError);
  CHECK_THROWS_AS(jacobian(flat, Vec3d{0.1, 0.2, 0.3}, 0.0), DegenerateMapError);
  // scale invariance: a tiny but regular map is fine
  auto tiny = TrajectoryField::analytic(
      [](const auto& a, const auto&) {
        using J = std::decay_t<decltype(a[0])>;
        return Vec3<J>(1e-8 * a[0], 1e-8 * a[1], 1e-8 * a[2]);
      },
      kBox, 0, 1);
  CHECK_NOTHROW(jacobian(tiny, Vec3d{0.1, 0.2, 0.3}, 0.0));
}

TEST_CASE("pullback_gradient examples") {
  auto bi = jacobian<Rational>(identity(), kA, Rational(0));
  auto g = pullback_gradient(bi, Vec3<Rational>(Rational(1), Rational(2), Rational(3)));
  CHECK(g[2] == 3);
  auto bd = jacobian<Rational>(dilation2(), kA, Rational(0));
  auto gd = pullback_gradient(bd, Vec3<Rational>(Rational(1), Rational(1), Rational(1)));
  CHECK(gd[0] == 2);
  CHECK(gd[2] == 2);
  auto bs = jacobian<Rational>(shear(), kA, Rational(3));
  auto gs = pullback_gradient(bs, Vec3<Rational>(Rational(1), Rational(0), Rational(0)));
  CHECK(gs[0] == 1);
  CHECK(gs[1] == 3);
  CHECK(gs[2] == 0);
}

TEST_CASE("A3/A4/A5 examples") {
  CHECK(all_zero(check_A3<Rational>(identity(), kA, Rational(1))));
  CHECK(all_zero(check_A3<Rational>(shear(), kA, Rational(3))));
  CHECK(all_zero(check_A4<Rational>(shear(), kA, Rational(3))));
  auto tr = make_fixture("translation");
  const Vec3<Rational> b(Rational(1, 4), Rational(1, 5), Rational(0));
  CHECK(all_zero(check_A4<Rational>(tr.field, b, Rational(2))));
  auto a5 = check_A5<Rational>(tr.field, b, Rational(2));
  CHECK(a5[0] == 0);
  CHECK(a5[1] == 0);

  auto rot = make_fixture("rigid-rotation");
  const Vec3d a{0.3, -0.4, 0.5};
  CHECK(max_abs(check_A3(rot.field, a, 1.3, 1e-3)) < 1e-10);
  CHECK(max_abs(check_A3<double>(rot.field, a, 1.3)) < 1e-12);
  CHECK(max_abs(check_A4<double>(rot.field, a, 1.3)) < 1e-10);
  CHECK(max_abs(check_A5<double>(rot.field, a, 1.3)) < 1e-10);
}

TEST_CASE("curl pullback examples") {
  const auto zero = VectorField::zero();
  const auto F = ScalarField::from_polynomial(var(0) * var(1) * var(1) + var(2));
  auto r0 = prop_A1_residual<Rational>(shear(), zero, F, kA, Rational(2));
  CHECK(r0[0] == 0);
  CHECK(r0[1] == 0);
  CHECK(r0[2] == 0);

  const auto q = VectorField::from_polynomials({var(1), Polynomial(), Polynomial()});
  auto r1 = prop_A1_residual<Rational>(shear(), q, ScalarField::constant(0.0), kA, Rational(3));
  CHECK(r1[0] == 0);
  CHECK(r1[1] == 0);
  CHECK(r1[2] == 0);

  const auto q2 = VectorField::from_polynomials({var(1) * var(2), var(0) * var(0), var(3) * var(1)});
  auto r2 = prop_A1_residual<Rational>(identity(), q2, F, kA, Rational(3));
  CHECK(r2[0] == 0);
  CHECK(r2[1] == 0);
  CHECK(r2[2] == 0);
}

TEST_CASE("transform line, surface and volume elements") {
  auto bd = jacobian<Rational>(dilation2(), kA, Rational(0));
  const Vec3<Rational> e(Rational(1), Rational(0), Rational(0));
  CHECK(transform_line(bd, e)[0] == 2);
  CHECK(transform_surface(bd, e)[0] == 4);
  CHECK(transform_volume(bd, Rational(1)) == 8);
  auto bs = jacobian<Rational>(shear(), kA, Rational(3));
  auto dx = transform_line(bs, Vec3<Rational>(Rational(0), Rational(1), Rational(0)));
  CHECK(dx[0] == 3);
  CHECK(dx[1] == 1);
  auto bi = jacobian<Rational>(identity(), kA, Rational(0));
  CHECK(transform_surface(bi, e) == e);
}

TEST_CASE("identity battery: exact zeros on random polynomial maps") {
  const auto start = std::chrono::steady_clock::now();
  auto r = run_identity_battery(100, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.trials == 100);
  CHECK(r.all_zero());
  CHECK(secs < 10.0);
  auto r2 = run_identity_battery(100, 1);
  CHECK(r2.resampled == r.resampled);
}

TEST_CASE("volume transport on incompressible fixtures") {
  auto rot = make_fixture("rigid-rotation");
  auto ger = make_fixture("gerstner");
  for (double t : {0.0, 0.7, 3.1}) {
    CHECK(std::abs(jacobian(rot.field, Vec3d{0.2, 0.3, -0.1}, t).Jdet - 1.0) < 1e-13);
    const Vec3d a = ger.grid.label(100);
    CHECK(std::abs(jacobian(ger.field, a, t).Jdet - jacobian(ger.field, a, 0.0).Jdet) < 1e-13);
  }
}
