#pragma once

#include <stdexcept>
#include <string>

namespace quadsgd {

// Base class for every error raised by this library. Catching quadsgd::Error
// is enough to handle anything thrown here; std::runtime_error keeps it
// compatible with generic handlers.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Spectrum or source exponents outside the admissible range (need > 1).
class InvalidSpectrumError : public Error {
 public:
  using Error::Error;
};

// Dimension arguments that are non-positive or mutually inconsistent.
class InvalidDimsError : public Error {
 public:
  using Error::Error;
};

// Non-positive scale, noise level, budget, or tolerance.
class InvalidScaleError : public Error {
 public:
  using Error::Error;
};

// Coordinate index outside the valid range for the instance.
class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Horizon too short for the step-decay schedule to be well defined.
class TooFewStepsError : public Error {
 public:
  using Error::Error;
};

// A computed value came out NaN or infinite where a finite one is required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Parameter vector length does not match the trainable block size.
class DimMismatchError : public Error {
 public:
  using Error::Error;
};

// Monte Carlo estimate requested with too few samples.
class TooFewSamplesError : public Error {
 public:
  using Error::Error;
};

// Regression fit requested with fewer than two points.
class TooFewPointsError : public Error {
 public:
  using Error::Error;
};

// Log-log fit fed a coordinate that is not strictly positive.
class NonPositiveValueError : public Error {
 public:
  using Error::Error;
};

// Empty record set, grid, or model-kind list where at least one is needed.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Trajectory lacks a checkpoint the phase diagnostics require.
class MissingCheckpointError : public Error {
 public:
  using Error::Error;
};

// Malformed or invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File could not be read, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace quadsgd
