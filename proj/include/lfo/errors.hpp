#pragma once

#include <stdexcept>

namespace lfo {

// Base class for all recoverable engine errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input is not parseable at all (bad JSON, truncated stream).
struct MalformedFile : Error {
  using Error::Error;
};

// Input parses but does not match the expected schema
// (missing/extra/ill-typed fields, unknown enum strings).
struct SchemaViolation : Error {
  using Error::Error;
};

// A direction vector with near-zero norm where a unit vector is required.
struct ZeroVector : Error {
  using Error::Error;
};

// A skill was invoked without a parameter its contract requires.
struct MissingParam : Error {
  using Error::Error;
};

// A joint value outside the robot's hard limits reached a kinematic query.
struct JointLimitViolation : Error {
  using Error::Error;
};

}  // namespace lfo
