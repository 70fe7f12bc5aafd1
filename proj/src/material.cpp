#include "cauchy/material.hpp"

#include <cmath>

#include "cauchy/errors.hpp"

namespace cauchy {

namespace {

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational ipow(const Rational& x, long n) {
  Rational r(1);
  const Rational base = n >= 0 ? x : Rational(1) / x;
  for (long i = 0; i < std::labs(n); ++i) r *= base;
  return r;
}

void check_rho(double rho) {
  if (!(rho > 0.0)) throw PhysicsError("equation of state queried at nonpositive density");
}

}  // namespace

BarotropicEOS BarotropicEOS::none() {
  BarotropicEOS e;
  e.name_ = "none";
  e.E_ = [](double) { return 0.0; };
  e.dE_ = [](double) { return 0.0; };
  e.d2E_ = [](double) { return 0.0; };
  return e;
}

BarotropicEOS BarotropicEOS::polytropic(Rational K, Rational gamma) {
  if (gamma == 1) throw ConfigError("polytropic exponent must differ from 1");
  if (sgn(K) < 0) throw ConfigError("polytropic constant must be nonnegative");
  BarotropicEOS e;
  e.name_ = "polytropic(K=" + K.get_str() + ",gamma=" + gamma.get_str() + ")";
  const double k = K.get_d(), g = gamma.get_d();
  e.E_ = [k, g](double r) { return k * std::pow(r, g - 1) / (g - 1); };
  e.dE_ = [k, g](double r) { return k * std::pow(r, g - 2); };
  e.d2E_ = [k, g](double r) { return k * (g - 2) * std::pow(r, g - 3); };
  e.p_ = [k, g](double r) { return k * std::pow(r, g); };
  e.K_ = K;
  e.gamma_ = gamma;
  return e;
}

BarotropicEOS BarotropicEOS::custom(Fn E, Fn dE, Fn d2E, Fn p_independent, std::string name) {
  BarotropicEOS e;
  e.name_ = std::move(name);
  e.E_ = std::move(E);
  e.dE_ = std::move(dE);
  e.d2E_ = std::move(d2E);
  e.p_ = std::move(p_independent);
  return e;
}

double BarotropicEOS::E(double rho) const {
  check_rho(rho);
  return E_(rho);
}
double BarotropicEOS::dE(double rho) const {
  check_rho(rho);
  return dE_(rho);
}
double BarotropicEOS::d2E(double rho) const {
  check_rho(rho);
  return d2E_(rho);
}
double BarotropicEOS::pressure(double rho) const { return rho * rho * dE(rho); }
double BarotropicEOS::dpressure(double rho) const { return 2 * rho * dE(rho) + rho * rho * d2E(rho); }

std::optional<Rational> BarotropicEOS::pressure_exact(const Rational& rho) const {
  if (!K_ || !is_integer(*gamma_)) return std::nullopt;
  Rational p = *K_ * ipow(rho, gamma_->get_num().get_si());
  p.canonicalize();
  return p;
}

std::optional<Rational> BarotropicEOS::pressure_from_energy_exact(const Rational& rho) const {
  if (!K_ || !is_integer(*gamma_)) return std::nullopt;
  // E' = K rho^(gamma-2)
  const long g = gamma_->get_num().get_si();
  Rational p = rho * rho * (*K_ * ipow(rho, g - 2));
  p.canonicalize();
  return p;
}

double BarotropicEOS::consistency(double rho) const {
  if (!p_) return 0.0;
  const double a = pressure(rho), b = p_(rho);
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

FlowMaterial FlowMaterial::standard(double g) {
  FlowMaterial m;
  m.potential = ScalarField::from_polynomial(Polynomial(Rational(g)) * Polynomial::variable(2));
  return m;
}

}  // namespace cauchy
