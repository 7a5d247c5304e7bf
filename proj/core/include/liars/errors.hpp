#pragma once

#include <stdexcept>
#include <string>

namespace liars {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition or configuration violated by the caller.
struct InvalidArgument : Error {
  using Error::Error;
};

struct NotDifferentiable : Error {
  using Error::Error;
};

struct FixedPointDiverged : Error {
  using Error::Error;
};

struct StateEscapedInterval : Error {
  using Error::Error;
};

struct InvalidSpeedup : Error {
  using Error::Error;
};

// The liar already reaches every agent, so the threshold is meaningless.
struct TrivialReach : Error {
  using Error::Error;
};

struct BoundViolation : Error {
  using Error::Error;
};

struct StabilityViolation : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

}  // namespace liars
