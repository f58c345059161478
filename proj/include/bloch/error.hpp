#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace bloch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid numeric parameter (grid depth, boundary epsilon, alpha range...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Precondition on the argument domain violated (e.g. |a| <= 1/2 where
/// the derivative lower bound is only claimed for 1/2 < |a| < 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Symbol text that does not conform to the grammar, or whose parameters
/// are out of range.  `position()` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The symbol leaves the closed unit disk on the certification grid.
class NotSelfMap : public Error {
 public:
  NotSelfMap(const std::string& what, double sup_modulus)
      : Error(what), sup_modulus_(sup_modulus) {}
  double sup_modulus() const noexcept { return sup_modulus_; }

 private:
  double sup_modulus_;
};

/// An objective evaluated to inf/nan.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::complex<double> where)
      : Error(what), where_(where) {}
  std::complex<double> where() const noexcept { return where_; }

 private:
  std::complex<double> where_;
};

/// Criterion requested for a weight it does not apply to (Zhao needs v_beta).
class UnsupportedWeight : public Error {
 public:
  using Error::Error;
};

/// Configuration file or flag problems (unknown keys, bad values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Report output could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bloch
