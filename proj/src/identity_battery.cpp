#include <random>

#include "cauchy/kinematics.hpp"

namespace cauchy {

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  return Rational(num(rng), den(rng));
}

template <class M>
bool zero(const M& m) {
  for (const auto& x : m.m)
    if (!is_zero(x)) return false;
  return true;
}

bool zero(const Vec3<Rational>& v) { return is_zero(v[0]) && is_zero(v[1]) && is_zero(v[2]); }

}  // namespace

IdentityBatteryResult run_identity_battery(int trials, std::uint64_t seed) {
  IdentityBatteryResult r;
  std::mt19937_64 rng(seed);
  const Box box{{-1e9, -1e9, -1e9}, {1e9, 1e9, 1e9}};
  while (r.trials < trials) {
    std::array<Polynomial, 3> x;
    for (int i = 0; i < 3; ++i) x[i] = Polynomial::variable(i) + random_polynomial(rng, 3, 4);
    std::array<Polynomial, 3> q, w, v;
    for (int i = 0; i < 3; ++i) {
      q[i] = random_polynomial(rng, 3, 4);
      w[i] = random_polynomial(rng, 3, 4);
      v[i] = random_polynomial(rng, 3, 4);
    }
    const auto F = ScalarField::from_polynomial(random_polynomial(rng, 3, 4));
    const Vec3<Rational> a(random_rational(rng), random_rational(rng), random_rational(rng));
    const Rational t = random_rational(rng);
    const auto field = TrajectoryField::polynomial(x, box, -1e9, 1e9, "random");
    try {
      const auto a3 = check_A3<Rational>(field, a, t);
      const auto a4 = check_A4<Rational>(field, a, t);
      const auto a5 = check_A5<Rational>(field, a, t);
      const auto pa1 = prop_A1_residual<Rational>(field, VectorField::from_polynomials(q), F, a, t);
      const Rational vi =
          vector_identity_residual<Rational>(VectorField::from_polynomials(w), VectorField::from_polynomials(v), a, t);
      ++r.trials;
      r.a3_zero += zero(a3);
      r.a4_zero += zero(a4);
      r.a5_zero += zero(a5);
      r.prop_a1_zero += zero(pa1);
      r.vector_identity_zero += is_zero(vi);
    } catch (const DegenerateMapError&) {
      ++r.resampled;
    }
  }
  return r;
}

}  // namespace cauchy
