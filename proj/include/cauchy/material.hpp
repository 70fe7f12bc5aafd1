#pragma once

// Barotropic equation of state and the material data of a flow.

#include <functional>
#include <optional>
#include <string>

#include "cauchy/fields.hpp"

namespace cauchy {

/// Internal energy per unit mass E(rho) and the derived pressure
/// p(rho) = rho^2 E'(rho).
class BarotropicEOS {
 public:
  using Fn = std::function<double(double)>;

  /// E = 0 (pressureless / incompressible bookkeeping).
  static BarotropicEOS none();
  /// E = K rho^(gamma-1) / (gamma-1), so p = K rho^gamma.
  static BarotropicEOS polytropic(Rational K, Rational gamma);
  /// Arbitrary E with its first two derivatives; `p_independent`, when
  /// given, is checked against rho^2 E'.
  static BarotropicEOS custom(Fn E, Fn dE, Fn d2E, Fn p_independent = {}, std::string name = "custom");

  const std::string& name() const { return name_; }

  double E(double rho) const;
  double dE(double rho) const;
  double d2E(double rho) const;
  double pressure(double rho) const;
  /// dp/drho = 2 rho E' + rho^2 E''.
  double dpressure(double rho) const;

  /// Exact pressure for polytropic laws with integer exponent.
  std::optional<Rational> pressure_exact(const Rational& rho) const;
  /// Exact rho^2 E'(rho) from the energy, for the same class of laws.
  std::optional<Rational> pressure_from_energy_exact(const Rational& rho) const;

  /// Relative discrepancy between rho^2 E' and the independent pressure law
  /// (0 when none was supplied).
  double consistency(double rho) const;

 private:
  std::string name_ = "none";
  Fn E_, dE_, d2E_, p_;
  std::optional<Rational> K_, gamma_;
};

/// Initial density rho0(a), equation of state and external potential P(x).
struct FlowMaterial {
  ScalarField rho0 = ScalarField::constant(1.0);
  BarotropicEOS eos = BarotropicEOS::none();
  ScalarField potential = ScalarField::constant(0.0);  // P(x, t), Eulerian

  /// rho0 = 1, no internal energy, gravity potential g x3.
  static FlowMaterial standard(double g = 9.81);
};

}  // namespace cauchy
