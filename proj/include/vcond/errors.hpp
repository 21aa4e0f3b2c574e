#pragma once

#include <stdexcept>
#include <string>

namespace vcond {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid precision or other construction-time configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a singularity of a kernel or potential.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Coincident nodes, vanishing denominators and similar degenerate input.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Node geometry outside the regime a lemma-based estimate is valid for.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge within its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Requested combination of measure/operation is not implemented.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Hypotheses of an estimate cannot be satisfied for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace vcond
