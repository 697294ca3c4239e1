#pragma once

#include <stdexcept>
#include <string>

namespace gluskabi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad construction parameter (non-positive period, too few samples, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// The two trajectories of a single-period solve do not share a period.
class PeriodError : public Error {
public:
  using Error::Error;
};

/// The raccordation interval is not compatible with the requested solver.
class IntervalError : public Error {
public:
  using Error::Error;
};

/// The endpoint system of the continuous solver is singular or ill-conditioned.
class ConditioningError : public Error {
public:
  using Error::Error;
};

/// A grid or quadrature partition cannot be aligned with the problem data.
class AlignmentError : public Error {
public:
  using Error::Error;
};

/// Requested feature has no method (e.g. irrational period ratio).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

}  // namespace gluskabi
