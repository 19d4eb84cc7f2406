#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pilot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

class DivergedEvolution : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  SizeLimitExceeded(std::size_t requested, std::size_t cap)
      : Error("dimension " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}
  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// Guidance was requested where the component-summed density is below the node threshold.
class NodeProximity : public Error {
 public:
  NodeProximity(double density, double threshold)
      : Error("density " + std::to_string(density) + " below node threshold " +
              std::to_string(threshold)),
        density_(density) {}
  double density() const noexcept { return density_; }

 private:
  double density_;
};

class StaleEnsemble : public Error {
 public:
  using Error::Error;
};

class InconclusiveMeasurement : public Error {
 public:
  InconclusiveMeasurement(double separation, double required)
      : Error("pointer branches separated by " + std::to_string(separation) +
              " widths, need > " + std::to_string(required)),
        separation_(separation) {}
  double separation() const noexcept { return separation_; }

 private:
  double separation_;
};

class Timeout : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class Solvability : public Error {
 public:
  using Error::Error;
};

class NeedsHistory : public Error {
 public:
  using Error::Error;
};

/// A zero-frequency mode entered a quantity that needs it excluded.
class ZeroMode : public Error {
 public:
  using Error::Error;
};

class NonNormalizable : public Error {
 public:
  using Error::Error;
};

}  // namespace pilot
