#pragma once

#include <stdexcept>
#include <string>

namespace senlab {

/// Base of every error raised by the library. Each subclass maps onto one
/// CLI exit code (see tools/senlab.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input, mismatched operands (different primes, different fields).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (outside a convergence disc,
/// non-Eisenstein polynomial, invalid automorphism, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The stored precision is not enough to decide the requested quantity.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A series failed the convergence monitor.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace senlab
