#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace volterra {

/// Positive, 1-based coordinate index into the infinite simplex.
using Index = std::uint64_t;

enum class ErrorCode {
  // simplex
  InvalidIndex,
  DuplicateIndex,
  NegativeMass,
  SumOutOfTolerance,
  EmptyFace,
  // generating
  NegativeCoordinate,
  NormalizationFailure,
  DomainViolation,
  LambdaOutOfRange,
  // quadratic
  NotSkew,
  BoundViolation,
  // cubic
  NegativeCoefficient,
  RowSumViolation,
  PermutationInconsistency,
  UndefinedTriple,
  NotVolterra,
  // inversion
  ResidualTooLarge,
  NonConvergence,
  // io
  MalformedInput,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace volterra
