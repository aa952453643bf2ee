#pragma once

#include <stdexcept>
#include <string>

namespace floq {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad inputs: dimension mismatches, asymmetric blocks, invalid specs, ...
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Some Floquet multiplier is off the unit circle beyond tolerance; the
// quantum constructions refuse to run on such configurations.
class UnstableError : public Error {
 public:
  UnstableError(const std::string& msg, double margin)
      : Error(msg), stability_margin(margin) {}
  double stability_margin;
};

// Repeated multiplier with a defective (or Krein-indefinite) eigenspace,
// or a multiplier pinned at +1 (resonant period).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// v_j^T u_j vanished: the canonical condition cannot be imposed.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// A quantity that must be real came out with an imaginary part beyond
// tolerance; signals inconsistent inputs.
class ImaginaryResidueError : public Error {
 public:
  using Error::Error;
};

// Series evaluation exceeded its term budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Phase-space grid guard (too many points, empty grid, ...).
class GridError : public Error {
 public:
  using Error::Error;
};

}  // namespace floq
