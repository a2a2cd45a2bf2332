#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polycalc {

// Every failure the library reports is one of these kinds. The harness maps
// them onto skip reasons and exit codes.
enum class ErrorKind {
  kDimensionMismatch,
  kParseError,
  kSchemaError,
  kInvalidOperation,
  kEmptyInput,
  kNotInSet,
  kNotExtremal,
  kNotSolid,
  kEmptyIntersection,
  kEmptyCommonDomain,
  kInfeasibleComposition,
  kImproperResult,
  kNotInDomain,
  kNotInGraph,
  kEmptyDomainIntersection,
  kNotADecomposition,
  kBadIntermediatePoint,
  kNotInBothGraphs,
  kMinusInfinityDetected,
  kNotASolution,
  kMonotonicityViolation,
  kNotASubgradient,
  kInternalConsistency,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require_dim(std::size_t got, std::size_t want,
                        std::string_view where) {
  if (got != want) {
    fail(ErrorKind::kDimensionMismatch,
         std::string(where) + ": expected dimension " + std::to_string(want) +
             ", got " + std::to_string(got));
  }
}

}  // namespace polycalc
