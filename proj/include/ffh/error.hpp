#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial text could not be parsed. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A precondition on user-supplied data does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Weierstrass data with identically vanishing discriminant.
class SingularCurve : public Error {
 public:
  using Error::Error;
};

/// Reduction modulo the hyperplane at infinity, where A and B have poles.
class PoleAtGamma : public Error {
 public:
  using Error::Error;
};

/// The discriminant vanishes identically on the hypersurface.
class SingularReduction : public Error {
 public:
  using Error::Error;
};

class DegreeCeilingExceeded : public Error {
 public:
  DegreeCeilingExceeded(const std::string& what, int level, int degree)
      : Error(what), level_(level), degree_(degree) {}
  int level() const noexcept { return level_; }
  int degree() const noexcept { return degree_; }

 private:
  int level_;
  int degree_;
};

/// An iteration hit its configured cap before finishing.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that the library relies on was found violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ffh
