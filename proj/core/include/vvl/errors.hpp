#pragma once

#include <stdexcept>
#include <string>

namespace vvl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched or invalid grid dimensions (non-square, odd n, grid mismatch).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Spectral data inconsistent with a real field (conjugate-symmetry violation).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A zero-mean precondition was violated; carries the offending mean.
class MeanViolationError : public Error {
 public:
  MeanViolationError(const std::string& what, double mean)
      : Error(what), mean_(mean) {}
  double mean() const { return mean_; }

 private:
  double mean_;
};

/// CFL or ordering violation in a time step; carries a compliant step size.
class StepSizeError : public Error {
 public:
  StepSizeError(const std::string& what, double suggested_dt)
      : Error(what), suggested_dt_(suggested_dt) {}
  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

/// Argument outside its mathematical domain (s, q, alpha, r ranges).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse for the requested scenario; carries the required n.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, int required_n)
      : Error(what), required_n_(required_n) {}
  int required_n() const { return required_n_; }

 private:
  int required_n_;
};

/// Too few samples for a finite-difference or quadrature operation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Trajectories cannot be brought onto a common sample grid.
class ResampleError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration (missing key, bad value, unknown key).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = -1)
      : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace vvl
