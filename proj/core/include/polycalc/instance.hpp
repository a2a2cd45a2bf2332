#pragma once

// Check instances as read from and written to files.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polycalc/json_io.hpp"

namespace polycalc {

enum class Kind {
  kSupportIntersection,
  kNormalIntersection,
  kConjugateSum,
  kConjugateChain,
  kConjugateMax,
  kSubdiffSum,
  kSubdiffChain,
  kSubdiffMax,
  kMarginalConjugate,
  kMarginalSubdiff,
  kOrderedChain,
  kCodSum,
  kCodChain,
  kCodIntersect,
  kExtremal,
  kBiconjugate,
};

std::string_view kind_name(Kind kind);
std::optional<Kind> parse_kind(std::string_view name);
const std::vector<Kind>& all_kinds();

// {"id": ..., "kind": ..., "payload": {...}, "probes": [...]}. Probes are
// vectors (x̄ or x*) or, for the coderivative kinds, objects naming the base
// point and the dual direction.
struct Instance {
  std::string id;
  Kind kind = Kind::kSupportIntersection;
  Json payload = Json::object();
  Json probes = Json::array();
};

Instance instance_from_json(const Json& j);
Json to_json(const Instance& instance);
// ParseError for unreadable files or invalid JSON, SchemaError for bad
// structure.
Instance load_instance(const std::filesystem::path& path);

}  // namespace polycalc
