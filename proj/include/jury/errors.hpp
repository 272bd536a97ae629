#pragma once

#include <stdexcept>

namespace jury {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Index-aligned inputs disagree on length.
struct DimensionError : Error {
  using Error::Error;
};

// A value lies outside the mathematical domain of the operation.
struct DomainError : Error {
  using Error::Error;
};

// Malformed input: non-finite weight, empty panel, bad vote flag, ...
struct InputError : Error {
  using Error::Error;
};

// Input size exceeds an exhaustive-enumeration bound.
struct CapacityError : Error {
  using Error::Error;
};

// Rejection sampling exhausted its retry budget.
struct SamplingError : Error {
  using Error::Error;
};

// Invalid run configuration; the message names the offending field.
struct ConfigError : Error {
  using Error::Error;
};

// Filesystem failure while reading or writing run artifacts.
struct IoError : Error {
  using Error::Error;
};

}  // namespace jury
