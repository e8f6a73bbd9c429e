#ifndef QWN_ERRORS_HPP
#define QWN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qwn {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural validation (grids, array shapes, malformed inputs).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// |g/omega| >= 1/2: the Bogoliubov condition has no real solution.
class ThresholdViolation : public Error {
 public:
  using Error::Error;
};

// omega == 0 with g != 0.
class DegenerateFrequency : public Error {
 public:
  using Error::Error;
};

// epsilon outside (0, 2) in the critical family.
class EpsilonOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonpositiveStep : public Error {
 public:
  using Error::Error;
};

// Fock truncation too small for the requested accuracy. Carries the
// computed tail bound when one is available.
class TruncationTooSmall : public Error {
 public:
  explicit TruncationTooSmall(const std::string& msg, double tail_bound = 0.0)
      : Error(msg), tail_bound_(tail_bound) {}
  double tail_bound() const { return tail_bound_; }

 private:
  double tail_bound_;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class NotNumberConserving : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// 1 + i*c*Omega vanishes: sigma is undefined for this scheme.
class PoleInScheme : public Error {
 public:
  using Error::Error;
};

class NonUnitaryScheme : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// Oscillatory k-quadrature does not resolve the fastest phase.
class PhaseUnderResolved : public Error {
 public:
  using Error::Error;
};

// tau-quadrature does not resolve the rescaled covariance kernel.
class KernelUnderResolved : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwn

#endif  // QWN_ERRORS_HPP
