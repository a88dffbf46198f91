#pragma once

#include <stdexcept>
#include <string>

namespace isorev {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Scalar-level contract violations.
struct NonUnitScalar : Error {
  explicit NonUnitScalar(const std::string& what) : Error(what) {}
};

// Shape mismatch between matrix/vector operands.
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Input expected to be unitary is not (within tolerance).
struct NotUnitary : Error {
  explicit NotUnitary(const std::string& what) : Error(what) {}
};

// Spectral routine could not certify its own output.
struct EigensolverFailure : Error {
  explicit EigensolverFailure(const std::string& what) : Error(what) {}
};

// Two operands carry incompatible group tags.
struct TagMismatch : Error {
  explicit TagMismatch(const std::string& what) : Error(what) {}
};

// Element fails its group's membership test.
struct NotInGroup : Error {
  explicit NotInGroup(const std::string& what) : Error(what) {}
};

// Eigenvalue too close to 1 to decide fixed vs moving, too far to snap.
struct IllConditioned : Error {
  explicit IllConditioned(const std::string& what) : Error(what) {}
};

// A constructive routine was invoked on input outside its criterion.
struct CriterionUnsatisfied : Error {
  explicit CriterionUnsatisfied(const std::string& what) : Error(what) {}
};

// No object with the requested properties exists (proven, not just unfound).
struct Infeasible : Error {
  explicit Infeasible(const std::string& what) : Error(what) {}
};

// Caller broke a documented precondition.
struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

// Structured input (JSON, CLI parameters) is malformed.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace isorev
