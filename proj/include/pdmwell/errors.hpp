#pragma once

#include <stdexcept>
#include <string>

namespace pdmwell {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its evaluation budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// An integrand or derivative evaluation produced NaN or Inf.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// Evaluation at the point where the effective mass diverges.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a map or a physical configuration.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A density handed to a functional does not integrate to one.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// Malformed command-line or run configuration.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace pdmwell
