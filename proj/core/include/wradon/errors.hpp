#pragma once

#include <stdexcept>
#include <string>

namespace wradon {

/// Requested a direction-dependent construction (alpha, frames, ray
/// decomposition) for a theta orthogonal to both e1 and e2.
class DegenerateDirectionError : public std::runtime_error {
 public:
  explicit DegenerateDirectionError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A weight left its declared [c, C] band, or a null-pair construction
/// produced |lambda * f0| too large for a strictly positive weight.
class WeightBoundViolation : public std::runtime_error {
 public:
  WeightBoundViolation(const std::string& what, double ratio)
      : std::runtime_error(what), ratio_(ratio) {}

  double ratio() const { return ratio_; }

 private:
  double ratio_ = 0.0;
};

/// The supplied f0 vanishes (below the energy floor) on every family line.
class DegenerateF0Error : public std::runtime_error {
 public:
  explicit DegenerateF0Error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace wradon
