#pragma once

#include <stdexcept>
#include <string>

namespace mcskit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raising pushed more probability past the Fock cutoff than allowed.
class LeakageExceeded : public Error {
 public:
  LeakageExceeded(double leakage, double tolerance)
      : Error("truncation leakage " + std::to_string(leakage) + " exceeds tolerance " +
              std::to_string(tolerance) + " (increase n_max)"),
        leakage_(leakage) {}
  double leakage() const noexcept { return leakage_; }

 private:
  double leakage_;
};

/// A probe vector touches the last k levels of the truncated basis.
class EdgeSupport : public Error {
 public:
  using Error::Error;
};

/// A requested basis index does not fit in the truncation.
class Overflow : public Error {
 public:
  using Error::Error;
};

/// The coherent state has non-negligible mass above n_max.
class TailTooHeavy : public Error {
 public:
  TailTooHeavy(double tail, double tolerance)
      : Error("coherent-state tail mass " + std::to_string(tail) + " above n_max exceeds " +
              std::to_string(tolerance)),
        tail_(tail) {}
  double tail() const noexcept { return tail_; }

 private:
  double tail_;
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

/// Two independent computation routes disagree beyond tolerance.
class RouteDiscrepancy : public Error {
 public:
  using Error::Error;
};

class DegenerateNorm : public Error {
 public:
  using Error::Error;
};

class WindowTooNarrow : public Error {
 public:
  using Error::Error;
};

class BoundaryMass : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class NoCandidate : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied parameter (label, grid, configuration string).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace mcskit
