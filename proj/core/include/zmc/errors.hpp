#pragma once

#include <stdexcept>
#include <string>

namespace zmc {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A point sits on (or numerically at) one of the ends 1, zeta, ..., zeta^{n-1}.
class PunctureError : public Error {
 public:
  using Error::Error;
};

// A (u, theta) point lies outside the analytic-extension domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// In the domain, but so close to its boundary that a log factor underflows.
class BoundaryError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Too close to the fold set for a metric-normalized quantity.
class FoldProximityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Integration path passes too close to a puncture.
class PathError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace zmc
