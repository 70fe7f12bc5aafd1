#include <doctest.h>

#include <cmath>
#include <memory>

#include "cauchy/fields.hpp"
#include "cauchy/trajectory_field.hpp"

using namespace cauchy;

namespace {

const Box kBigBox{{-10, -10, -10}, {10, 10, 10}};

Polynomial var(int v) { return Polynomial::variable(v); }

double slope(double e1, double e2, double h1, double h2) { return std::log(e1 / e2) / std::log(h1 / h2); }

}  // namespace

TEST_CASE("eval_state: identity and translation") {
  auto id = TrajectoryField::analytic([](const auto& a, const auto&) { return a; }, kBigBox, 0, 10);
  auto s = id.eval_state({1, 2, 3}, 5);
  CHECK(s.x[0] == 1);
  CHECK(s.x[2] == 3);
  CHECK(max_abs(s.xdot) == 0);
  CHECK(max_abs(s.xddot) == 0);

  auto tr = TrajectoryField::analytic(
      [](const auto& a, const auto& t) {
        using J = std::decay_t<decltype(t)>;
        return Vec3<J>(a[0] + t, a[1], a[2]);
      },
      kBigBox, 0, 10);
  auto st = tr.eval_state({1, 2, 3}, 5);
  CHECK(st.xdot[0] == 1);
  CHECK(st.xdot[1] == 0);
  CHECK(max_abs(st.xddot) == 0);
}

TEST_CASE("eval_state: polynomial map is exact") {
  auto f = TrajectoryField::polynomial({var(0) + var(3) * var(3) * var(1), var(1), var(2)}, kBigBox, 0, 10);
  auto s = f.eval_state({1, 1, 0}, 2);
  CHECK(s.x[0] == 5);
  CHECK(s.xdot[0] == 4);
  CHECK(s.xddot[0] == 2);
  auto e = f.exact_jet({Rational(1), Rational(1), Rational(0)}, Rational(2));
  CHECK(e[0].partial({0, 0, 0, 2}) == 2);
}

TEST_CASE("out-of-domain queries throw") {
  auto f = TrajectoryField::polynomial({var(0), var(1), var(2)}, Box{{0, 0, 0}, {1, 1, 1}}, 0, 1);
  CHECK_THROWS_AS(f.jet({2, 0, 0}, 0.5), DomainError);
  CHECK_THROWS_AS(f.jet({0.5, 0.5, 0.5}, 2.0), DomainError);
}

TEST_CASE("grad_label examples") {
  auto f1 = ScalarField::from_polynomial(var(0));
  auto g = grad_label(f1, {0.3, 0.1, 0.2}, 0);
  CHECK(g[0] == 1);
  CHECK(g[1] == 0);
  auto f2 = ScalarField::from_polynomial(var(0) * var(1) + var(2) * var(2));
  auto g2 = grad_label_exact(f2, {Rational(1), Rational(2), Rational(3)}, Rational(0));
  CHECK(g2[0] == 2);
  CHECK(g2[1] == 1);
  CHECK(g2[2] == 6);
  auto g3 = grad_label(ScalarField::constant(4.5), {1, 2, 3}, 0);
  CHECK(max_abs(g3) == 0);
}

TEST_CASE("curl and divergence examples") {
  auto v = VectorField::from_polynomials({-var(1), var(0), Polynomial()});
  auto c = curl_label_exact(v, {Rational(1), Rational(2), Rational(3)}, Rational(0));
  CHECK(c[0] == 0);
  CHECK(c[2] == 2);
  CHECK(div_label_exact(v, {Rational(1), Rational(2), Rational(3)}, Rational(0)) == 0);

  auto phi = ScalarField::from_polynomial(var(0) * var(1) * var(2));
  auto gv = VectorField::gradient_of(phi);
  auto cg = curl_label_exact(gv, {Rational(1, 3), Rational(2), Rational(-5, 7)}, Rational(0));
  CHECK(cg[0] == 0);
  CHECK(cg[1] == 0);
  CHECK(cg[2] == 0);

  auto id = VectorField::from_polynomials({var(0), var(1), var(2)});
  CHECK(div_label_exact(id, {Rational(1), Rational(1), Rational(1)}, Rational(0)) == 3);
  auto ci = curl_label(id, {1, 1, 1}, 0);
  CHECK(max_abs(ci) == 0);
}

TEST_CASE("div curl vanishes exactly on polynomial fields") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Polynomial, 3> p{random_polynomial(rng, 3, 5), random_polynomial(rng, 3, 5),
                                random_polynomial(rng, 3, 5)};
    auto v = VectorField::from_polynomials(p);
    const Vec3<Rational> a(Rational(trial, 7), Rational(-1, 3), Rational(2));
    auto [aj, tj] = coordinate_jets(a, Rational(1, 2));
    auto vj = v.exact_jet(aj, tj);
    CHECK(divergence(curl(vj)).value() == 0);
  }
}

TEST_CASE("finite-difference operators converge at the declared order") {
  auto fn = [](const Vec3d& p, double) { return std::sin(p[0]) * std::exp(0.5 * p[1]) * std::cos(p[2]); };
  const Vec3d a{0.3, -0.2, 0.7};
  const Vec3d exact{std::cos(0.3) * std::exp(-0.1) * std::cos(0.7), 0.5 * std::sin(0.3) * std::exp(-0.1) * std::cos(0.7),
                    -std::sin(0.3) * std::exp(-0.1) * std::sin(0.7)};
  for (int order : {2, 4}) {
    const double h1 = 0.02, h2 = 0.01;
    auto f1 = ScalarField::from_function(fn, {h1, order});
    auto f2 = ScalarField::from_function(fn, {h2, order});
    const double e1 = norm(grad_label(f1, a, 0) - exact);
    const double e2 = norm(grad_label(f2, a, 0) - exact);
    CHECK(slope(e1, e2, h1, h2) >= order - 0.2);
  }
}

TEST_CASE("finite-difference neighbourhood must stay in the domain") {
  auto f = ScalarField::from_function([](const Vec3d& p, double) { return p[0]; }, {0.1, 2});
  f.with_domain(Box{{0, 0, 0}, {1, 1, 1}});
  CHECK_THROWS_AS(grad_label(f, {0.05, 0.5, 0.5}, 0), DomainError);
  CHECK(grad_label(f, {0.5, 0.5, 0.5}, 0)[0] == doctest::Approx(1.0));
}

namespace {

auto wavy_map() {
  return [](const auto& a, const auto& t) {
    using J = std::decay_t<decltype(t)>;
    return Vec3<J>(a[0] + 0.1 * sin(a[1] + t), a[1] + 0.1 * cos(a[2] - t), a[2] + 0.05 * sin(a[0] + 2.0 * t));
  };
}

std::shared_ptr<SampledTrajectories> sample(int n, int order, double dt) {
  auto s = std::make_shared<SampledTrajectories>();
  s->grid = LabelGrid::cube_nodes(0.0, 1.0, n);
  s->fd_order = order;
  auto f = TrajectoryField::analytic(wavy_map(), kBigBox, -1, 2);
  for (int k = 0; k <= 10; ++k) s->times.push_back(k * dt);
  for (double t : s->times) {
    std::vector<Vec3d> slice;
    for (std::size_t i = 0; i < s->grid.size(); ++i) slice.push_back(f.position(s->grid.label(i), t));
    s->positions.push_back(slice);
  }
  return s;
}

}  // namespace

TEST_CASE("sampled backend reproduces the generating field at the declared order") {
  auto exact = TrajectoryField::analytic(wavy_map(), kBigBox, -1, 2);
  for (int order : {2, 4}) {
    double err[2];
    double hs[2];
    for (int r = 0; r < 2; ++r) {
      const int n = r == 0 ? 11 : 21;
      const double h = 1.0 / (n - 1);
      auto s = sample(n, order, h);
      auto f = TrajectoryField::sampled(s);
      CHECK(f.fd_order() == order);
      // a node in the interior, at an interior time slice
      const std::size_t node = s->grid.flat((n - 1) / 2, (n - 1) / 2, (n - 1) / 4);
      const Vec3d a = s->grid.label(node);
      const double t = s->times[5];
      auto j = f.jet(a, t);
      auto je = exact.jet(a, t);
      double e = 0;
      for (int i = 0; i < 3; ++i) {
        e = std::max(e, std::abs(j[i].partial({1, 0, 0, 0}) - je[i].partial({1, 0, 0, 0})));
        e = std::max(e, std::abs(j[i].partial({0, 1, 0, 0}) - je[i].partial({0, 1, 0, 0})));
        e = std::max(e, std::abs(j[i].partial({0, 0, 0, 1}) - je[i].partial({0, 0, 0, 1})));
        e = std::max(e, std::abs(j[i].partial({0, 0, 0, 2}) - je[i].partial({0, 0, 0, 2})));
      }
      err[r] = e;
      hs[r] = h;
    }
    CHECK(slope(err[0], err[1], hs[0], hs[1]) >= order - 0.2);
  }
}

TEST_CASE("sampled backend interpolates between nodes and wraps periodic axes") {
  auto s = std::make_shared<SampledTrajectories>();
  const double P = 2 * M_PI;
  s->grid = LabelGrid::periodic_box(0.0, P, 8);
  s->times = {0.0, 1.0, 2.0, 3.0, 4.0};
  for (double t : s->times) {
    std::vector<Vec3d> slice;
    for (std::size_t i = 0; i < s->grid.size(); ++i) {
      auto a = s->grid.label(i);
      slice.push_back({a[0] + t, a[1], a[2]});
    }
    s->positions.push_back(slice);
  }
  auto f = TrajectoryField::sampled(s);
  auto x = f.position({0.1, 0.2, 0.3}, 0.5);
  CHECK(x[0] == doctest::Approx(0.6));
  CHECK(x[1] == doctest::Approx(0.2));
  // one period to the left: labels and positions shift together
  auto y = f.position({0.1 - P, 0.2, 0.3}, 0.5);
  CHECK(y[0] == doctest::Approx(0.6 - P));
  // across the periodic seam
  auto z = f.position({P - 0.1, 0.2, 0.3}, 1.0);
  CHECK(z[0] == doctest::Approx(P - 0.1 + 1.0));
  // derivative through a periodic stencil at the seam node
  auto j = f.jet(s->grid.label(0), 2.0);
  CHECK(j[0].partial({1, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(j[0].partial({0, 0, 0, 1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(f.jet({0, 0, 0}, 5.0), DomainError);
}

TEST_CASE("inconsistent sampled data is rejected") {
  auto s = std::make_shared<SampledTrajectories>();
  s->grid = LabelGrid::cube_nodes(0, 1, 3);
  s->times = {0.0, 0.0};
  s->positions.resize(2, std::vector<Vec3d>(27));
  CHECK_THROWS(TrajectoryField::sampled(s));
}
