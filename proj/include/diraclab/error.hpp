#pragma once

#include <stdexcept>
#include <string>

namespace diraclab {

// Root of every error raised by the library. The CLI maps the subclasses
// onto its exit codes, so new errors must derive from one of the two
// families below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller input: malformed parameters, violated preconditions, unknown
// catalog rows. CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class InvalidProfileError : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

class ResolutionError : public InputError {
 public:
  using InputError::InputError;
};

class NotFoundError : public InputError {
 public:
  using InputError::InputError;
};

class NotCoveredError : public InputError {
 public:
  using InputError::InputError;
};

// A computation ran but its result cannot be trusted. CLI exit code 1.
class ComputationError : public Error {
 public:
  using Error::Error;
};

class TruncationRiskError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class DiscretizationError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class FlowStuckError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace diraclab
