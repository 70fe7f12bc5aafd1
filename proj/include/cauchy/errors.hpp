#pragma once

#include <stdexcept>
#include <string>

namespace cauchy {

/// A query left the domain of a field (label box or time window).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The label map is singular (or numerically so) at the queried point.
class DegenerateMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical precondition failed (nonpositive density, folded relabeling, ...).
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user configuration (unknown fixture, bad parameter, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cauchy
