#pragma once

#include <stdexcept>
#include <string>

namespace crlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameter (a <= 0, r <= 0, m < 2, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested outside a germ or model domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent solver configuration (grid too small for the unknowns).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// ODE step size underflow or non-finite state.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

class DegenerateMapError : public Error {
 public:
  using Error::Error;
};

}  // namespace crlab
