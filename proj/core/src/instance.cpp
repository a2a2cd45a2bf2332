#include "polycalc/instance.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "polycalc/errors.hpp"

namespace polycalc {
namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 16> kNames{{
    {Kind::kSupportIntersection, "support_intersection"},
    {Kind::kNormalIntersection, "normal_intersection"},
    {Kind::kConjugateSum, "conjugate_sum"},
    {Kind::kConjugateChain, "conjugate_chain"},
    {Kind::kConjugateMax, "conjugate_max"},
    {Kind::kSubdiffSum, "subdiff_sum"},
    {Kind::kSubdiffChain, "subdiff_chain"},
    {Kind::kSubdiffMax, "subdiff_max"},
    {Kind::kMarginalConjugate, "marginal_conjugate"},
    {Kind::kMarginalSubdiff, "marginal_subdiff"},
    {Kind::kOrderedChain, "ordered_chain"},
    {Kind::kCodSum, "cod_sum"},
    {Kind::kCodChain, "cod_chain"},
    {Kind::kCodIntersect, "cod_intersect"},
    {Kind::kExtremal, "extremal"},
    {Kind::kBiconjugate, "biconjugate"},
}};

}  // namespace

std::string_view kind_name(Kind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds = [] {
    std::vector<Kind> out;
    for (const auto& entry : kNames) out.push_back(entry.first);
    return out;
  }();
  return kinds;
}

Instance instance_from_json(const Json& j) {
  Instance out;
  const Json& kind = member(j, "kind");
  if (!kind.is_string()) fail(ErrorKind::kSchemaError, "kind must be a string");
  const auto k = parse_kind(kind.get<std::string>());
  if (!k) fail(ErrorKind::kSchemaError, "unknown kind " + kind.dump());
  out.kind = *k;
  if (j.contains("id")) {
    if (!j["id"].is_string()) fail(ErrorKind::kSchemaError, "id must be a string");
    out.id = j["id"].get<std::string>();
  }
  out.payload = member(j, "payload");
  if (!out.payload.is_object()) {
    fail(ErrorKind::kSchemaError, "payload must be an object");
  }
  // "probe_points" is accepted as a synonym.
  const char* probes_key = j.contains("probes") ? "probes" : "probe_points";
  if (j.contains(probes_key)) {
    out.probes = j[probes_key];
    if (!out.probes.is_array()) {
      fail(ErrorKind::kSchemaError, "probes must be an array");
    }
  }
  return out;
}

Json to_json(const Instance& instance) {
  return Json{{"id", instance.id},
              {"kind", std::string(kind_name(instance.kind))},
              {"payload", instance.payload},
              {"probes", instance.probes}};
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kParseError, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kParseError, path.string() + ": " + e.what());
  }
  Instance out = instance_from_json(j);
  if (out.id.empty()) out.id = path.stem().string();
  return out;
}

}  // namespace polycalc
