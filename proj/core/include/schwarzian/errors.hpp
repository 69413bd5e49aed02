#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schwarzian {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BasePointMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroJet : public Error {
 public:
  using Error::Error;
};

// All significant coefficients were truncated away, or an operation needs
// more coefficients than the jet carries.
class OrderUnderflow : public Error {
 public:
  using Error::Error;
};

// log / fractional power of a jet that is not a unit (vanishing constant
// term or a pole).
class BranchError : public Error {
 public:
  using Error::Error;
};

// Evaluation outside the domain of a function: essential singularity,
// Bessel argument beyond the series radius, Laurent jet where an analytic
// one is required, and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// S_k(c) is infinite by convention for constant c; surfaced as an error.
class SchwarzianOfConstant : public Error {
 public:
  using Error::Error;
};

// A combinatorial identity the decomposition relies on failed to hold.
class ConditionViolation : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class ContourError : public Error {
 public:
  using Error::Error;
};

}  // namespace schwarzian
