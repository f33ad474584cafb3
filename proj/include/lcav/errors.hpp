#pragma once

#include <stdexcept>
#include <string>

namespace lcav {

/// Invalid configuration, flag, or field-spec grammar. CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested Fock truncation cannot hold the state within the norm tolerance.
struct TruncationError : ConfigError {
  TruncationError(const std::string& msg, int required_kmax)
      : ConfigError(msg), required_kmax(required_kmax) {}
  int required_kmax;
};

/// NaN/overflow detected during time integration. CLI exit code 3.
struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& msg, long step)
      : std::runtime_error(msg), step(step) {}
  long step;
};

/// A numerical integrity check failed (Hermiticity, imaginary diagonal, ...).
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature or evolution did not reach the requested tolerance. Exit code 4.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lcav
