#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace gabor_super {

/// Short %g rendering of a number for error messages.
inline std::string show(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes (length, channel count, lattice) do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Lattice steps that do not divide the signal length.
class LatticeError : public Error {
 public:
  using Error::Error;
};

/// Exponents, tolerances or other scalar arguments out of range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The Gabor system has lower frame bound A at or below the frame tolerance.
class NotAFrame : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its iteration cap.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class SupportTooWide : public Error {
 public:
  using Error::Error;
};

class SingularWeight : public Error {
 public:
  using Error::Error;
};

class NotDualPair : public Error {
 public:
  using Error::Error;
};

// Weight construction failures.
class NonPositiveWeight : public Error {
 public:
  using Error::Error;
};

class AsymmetricWeight : public Error {
 public:
  using Error::Error;
};

class SubmultiplicativityError : public Error {
 public:
  using Error::Error;
};

class SingularOperator : public Error {
 public:
  using Error::Error;
};

class ToleranceFailure : public Error {
 public:
  using Error::Error;
};

/// Two internal routes that must agree did not. Signals a bug, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class MultiTermError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating JSON input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace gabor_super
