#pragma once

// The label map x(a, t) with its derivatives.
//
// Every backend answers the same question: the jet of x in (a1, a2, a3, t)
// about a point, complete to total degree 3. Position, velocity,
// acceleration, the Jacobian matrix and all mixed derivatives used by the
// kinematic identities are read off that jet.

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cauchy/fields.hpp"
#include "cauchy/label_grid.hpp"

namespace cauchy {

enum class Backend { analytic, polynomial, sampled };

const char* to_string(Backend b);

struct State {
  Vec3d x;
  Vec3d xdot;
  Vec3d xddot;
};

/// Trajectories stored on a label grid at a sequence of time stamps.
struct SampledTrajectories {
  LabelGrid grid;
  std::vector<double> times;
  /// positions[slice][node]
  std::vector<std::vector<Vec3d>> positions;
  /// Optional full (a, t) jets about each (node, time), e.g. from tangent
  /// propagation during integration. When absent, derivatives come from
  /// finite differences of `positions` at `fd_order`.
  std::vector<std::vector<JetVec<double>>> jets;
  int fd_order = 4;

  bool has_jets() const { return !jets.empty(); }
  /// Throws std::invalid_argument on inconsistent sizes or times.
  void validate() const;
};

class TrajectoryField {
 public:
  using MapFn = std::function<JetVec<double>(const JetVec<double>&, const DJet&)>;

  TrajectoryField() = default;

  /// From a generic callable x(a, t) instantiable with DJet.
  template <class F>
  static TrajectoryField analytic(F f, Box domain, double t0, double t1, std::string name = "analytic") {
    TrajectoryField tf;
    tf.backend_ = Backend::analytic;
    tf.map_ = [f](const JetVec<double>& a, const DJet& t) {
      auto r = f(a, t);
      return JetVec<double>(DJet(r[0]), DJet(r[1]), DJet(r[2]));
    };
    tf.domain_ = domain;
    tf.t0_ = t0;
    tf.t1_ = t1;
    tf.name_ = std::move(name);
    return tf;
  }

  static TrajectoryField polynomial(std::array<Polynomial, 3> x, Box domain, double t0, double t1,
                                    std::string name = "polynomial");

  static TrajectoryField sampled(std::shared_ptr<const SampledTrajectories> data, std::string name = "sampled");

  Backend backend() const { return backend_; }
  const std::string& name() const { return name_; }
  const Box& domain() const { return domain_; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  /// Finite-difference order of a sampled field without stored jets; 0 when
  /// derivatives are exact or propagated.
  int fd_order() const;

  const std::array<Polynomial, 3>* polynomials() const { return polys_.get(); }
  const SampledTrajectories* samples() const { return samples_.get(); }

  /// Jet of x about (a, t). Throws DomainError outside the domain.
  JetVec<double> jet(const Vec3d& a, double t) const;
  /// Exact jet (polynomial backend only).
  JetVec<Rational> exact_jet(const Vec3<Rational>& a, const Rational& t) const;

  template <class T>
  JetVec<T> jet_at(const Vec3<T>& a, const T& t) const {
    if constexpr (std::is_same_v<T, Rational>)
      return exact_jet(a, t);
    else
      return jet(a, t);
  }

  State eval_state(const Vec3d& a, double t) const;
  Vec3d position(const Vec3d& a, double t) const;

  bool contains(const Vec3d& a, double t) const;

 private:
  void check_domain(const Vec3d& a, double t) const;
  JetVec<double> sampled_jet(const Vec3d& a, double t) const;
  JetVec<double> node_jet(std::size_t node, std::size_t slice) const;

  Backend backend_ = Backend::analytic;
  std::string name_;
  MapFn map_;
  std::shared_ptr<const std::array<Polynomial, 3>> polys_;
  std::shared_ptr<const SampledTrajectories> samples_;
  Box domain_{};
  double t0_ = 0.0;
  double t1_ = 0.0;
};

/// Finite-difference jet of sampled positions at a grid node and time slice.
JetVec<double> finite_difference_jet(const SampledTrajectories& s, std::size_t node, std::size_t slice);

}  // namespace cauchy
