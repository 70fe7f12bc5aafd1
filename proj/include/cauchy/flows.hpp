#pragma once

// Fixture catalog and the trajectory integrator.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cauchy/label_grid.hpp"
#include "cauchy/material.hpp"
#include "cauchy/trajectory_field.hpp"

namespace cauchy {

using Params = std::map<std::string, double>;

struct FixtureSpec {
  std::string name;
  Params params;  // overrides of the fixture defaults

  /// Parses "name" or "name:key=value,key=value".
  static FixtureSpec parse(const std::string& text);
};

struct Fixture {
  std::string name;
  Params params;  // effective parameters, defaults filled in
  TrajectoryField field;
  FlowMaterial material;
  /// Pressure over (a, t) when known in closed form.
  std::optional<ScalarField> pressure;
  bool extremal = false;
  /// Labels are the positions at t0 (J(a, t0) = I).
  bool labels_are_initial_positions = false;
  /// Characteristic time (period, turnover time) for FD steps and windows.
  double time_scale = 1.0;
  /// Planar flows have Omega perpendicular to V everywhere.
  bool planar = false;
  /// Default label grid for suites.
  LabelGrid grid;
  std::string description;
};

/// Names accepted by make_fixture.
std::vector<std::string> fixture_names();

/// Throws ConfigError on an unknown name, unknown parameter or parameters
/// outside their validity range.
Fixture make_fixture(const FixtureSpec& spec);
Fixture make_fixture(const std::string& text);

// ---- Eulerian velocity fields ------------------------------------------------

/// ABC flow u = (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x).
VectorField abc_velocity(double A = 1, double B = 1, double C = 1);
/// Steady Taylor-Green cells u = (sin x cos y, -cos x sin y, 0).
VectorField taylor_green_velocity();
/// Rigid rotation u = Omega0 e3 x x.
VectorField rigid_rotation_velocity(double omega0 = 1);

struct IntegrateOptions {
  /// Keep every n-th step (the last step is always kept).
  int store_every = 1;
  /// Propagate label and time derivatives (needed for Omega, J, ...).
  bool propagate_jets = true;
};

/// Classical fourth-order Runge-Kutta integration of xdot = u(x, t) for every
/// label of the grid, labels being initial positions. Label derivatives are
/// integrated with the trajectories (variational equations); time
/// derivatives at stored slices follow from u along the path.
TrajectoryField integrate_trajectories(const VectorField& u, const LabelGrid& grid, double t0, double t1, double dt,
                                       IntegrateOptions opts = {}, std::string name = "integrated");

/// Position after integrating a single label with RK4 (no jets).
Vec3d integrate_point(const VectorField& u, const Vec3d& a, double t0, double t1, double dt);

}  // namespace cauchy
