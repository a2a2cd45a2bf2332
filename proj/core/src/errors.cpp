#include "polycalc/errors.hpp"

namespace polycalc {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kSchemaError: return "SchemaError";
    case ErrorKind::kInvalidOperation: return "InvalidOperation";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kNotInSet: return "NotInSet";
    case ErrorKind::kNotExtremal: return "NotExtremal";
    case ErrorKind::kNotSolid: return "NotSolid";
    case ErrorKind::kEmptyIntersection: return "EmptyIntersection";
    case ErrorKind::kEmptyCommonDomain: return "EmptyCommonDomain";
    case ErrorKind::kInfeasibleComposition: return "InfeasibleComposition";
    case ErrorKind::kImproperResult: return "ImproperResult";
    case ErrorKind::kNotInDomain: return "NotInDomain";
    case ErrorKind::kNotInGraph: return "NotInGraph";
    case ErrorKind::kEmptyDomainIntersection: return "EmptyDomainIntersection";
    case ErrorKind::kNotADecomposition: return "NotADecomposition";
    case ErrorKind::kBadIntermediatePoint: return "BadIntermediatePoint";
    case ErrorKind::kNotInBothGraphs: return "NotInBothGraphs";
    case ErrorKind::kMinusInfinityDetected: return "MinusInfinityDetected";
    case ErrorKind::kNotASolution: return "NotASolution";
    case ErrorKind::kMonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::kNotASubgradient: return "NotASubgradient";
    case ErrorKind::kInternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

}  // namespace polycalc
