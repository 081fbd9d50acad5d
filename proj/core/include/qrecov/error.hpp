#pragma once

#include <stdexcept>
#include <string>

namespace qrecov {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or subsystem dimensions are inconsistent.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operator that must be positive semi-definite has a negative eigenvalue
/// beyond the configured tolerance.
class NotPSDError : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidChannel : public Error {
 public:
  using Error::Error;
};

class InvalidMeasurement : public Error {
 public:
  using Error::Error;
};

/// A value object was constructed from data violating one of its invariants.
/// The message names the invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// supp(rho) is not contained in supp(sigma) where containment is required.
class SupportError : public Error {
 public:
  using Error::Error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// The Hermitian eigensolver failed to converge.
class EigenError : public Error {
 public:
  using Error::Error;
};

/// A t-search objective returned NaN or an infinity.
class ObjectiveError : public Error {
 public:
  ObjectiveError(const std::string& what, double t) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

/// Malformed JSON input. `offset()` is the byte position reported by the parser.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset) : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace qrecov
