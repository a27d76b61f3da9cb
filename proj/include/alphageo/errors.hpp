#pragma once

#include <stdexcept>
#include <string>

namespace alphageo {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid numerical input: non-positive probabilities, length mismatches,
/// points outside (or too close to the boundary of) a parameter domain.
struct DomainError : Error {
  using Error::Error;
};

/// Prior density is non-positive or otherwise unusable at a requested point.
struct PriorError : Error {
  using Error::Error;
};

/// Malformed experiment configuration (unknown keys, bad field values).
struct ConfigError : Error {
  using Error::Error;
};

/// An information matrix is singular or too ill-conditioned to invert
/// (condition number above the cutoff).
struct SingularInformation : Error {
  using Error::Error;
};

}  // namespace alphageo
