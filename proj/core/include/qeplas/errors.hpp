#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qeplas {

/// Input outside the domain of a physical formula (e.g. no real plasmon resonance).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Linear-algebra or integration failure. Carries a reciprocal condition
/// estimate when the failing path can compute one (NaN otherwise).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what, double rcond = std::nan(""))
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// g2(0) requested from a state with vanishing intensity.
class UndefinedCorrelation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qeplas
