#pragma once

#include <stdexcept>
#include <string>

namespace qfrac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Pochhammer factor vanished in a denominator (q-Gamma or q-power pole).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A truncated series or product hit max_terms before its stopping rule fired.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, long terms)
      : Error(what), terms_(terms) {}
  long terms() const noexcept { return terms_; }

 private:
  long terms_;
};

}  // namespace qfrac
