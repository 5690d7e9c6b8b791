#pragma once

#include <stdexcept>
#include <string>

namespace qzeno {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad numerical input or a numerically impossible operation.
struct NumericError : Error {
  using Error::Error;
};

// Invalid configuration, unsupported request, or inconsistent inputs.
struct ConfigError : Error {
  using Error::Error;
};

// Filesystem trouble while reading configs or writing reports.
struct IoError : Error {
  using Error::Error;
};

struct InvalidMatrix : NumericError {
  using NumericError::NumericError;
};
struct NotHermitian : NumericError {
  using NumericError::NumericError;
};
struct NotProjector : NumericError {
  using NumericError::NumericError;
};
struct StateOutsideSubspace : NumericError {
  using NumericError::NumericError;
};
struct DegenerateStep : NumericError {
  using NumericError::NumericError;
};
struct ZeroVector : NumericError {
  using NumericError::NumericError;
};
struct InvalidMoments : NumericError {
  using NumericError::NumericError;
};

struct EmptyBasis : ConfigError {
  using ConfigError::ConfigError;
};
struct TooLarge : ConfigError {
  using ConfigError::ConfigError;
};
struct Unsupported : ConfigError {
  using ConfigError::ConfigError;
};
struct Mismatch : ConfigError {
  using ConfigError::ConfigError;
};

}  // namespace qzeno
