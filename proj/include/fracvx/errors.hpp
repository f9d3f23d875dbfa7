#pragma once

#include <stdexcept>
#include <string>

namespace fracvx {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expression text could not be parsed. `position` is the byte offset of the
/// offending token in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position(position) {}
  std::size_t position;
};

/// A mathematical function was evaluated outside its domain
/// (ln of a non-positive value, Gamma at a pole, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exponent function left the admissible range.
class RangeViolation : public Error {
 public:
  using Error::Error;
};

/// An exponent function is not smooth enough (jet evaluation failed or
/// produced non-finite derivatives somewhere on the validation grid).
class NotSmooth : public Error {
 public:
  using Error::Error;
};

/// Invalid argument outside the numeric domain of a routine
/// (bad mesh parameters, t outside [0, T], ...).
class InvalidParam : public Error {
 public:
  using Error::Error;
};

/// A quadrature or linear-algebra routine could not reach the requested
/// accuracy, or a discrete system was too ill-conditioned to solve.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// The problem as posed has no admissible solution
/// (e.g. a nonzero initial value where only zero is attainable).
class IllPosedError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracvx
