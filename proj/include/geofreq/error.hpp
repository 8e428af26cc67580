#pragma once

#include <stdexcept>
#include <string>

namespace geofreq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model literal or model parameters are unusable (non-positive axis, bad JSON, ...).
class InvalidModel : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator could not make progress.
class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

/// Elements of different loop-homology rings were combined.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace geofreq
