#pragma once

#include <stdexcept>
#include <string>

namespace qineq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-domain argument or malformed input (CLI exit code 2).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A classical (mean-based) quantity was requested for an infinite-mean
/// distribution.
class InfiniteMeanError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The sample cannot support the requested ratio of quantiles: a denominator
/// quantile is zero.
class DegenerateSampleError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Quadrature did not converge, or a result violated a mathematical bound
/// (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qineq
