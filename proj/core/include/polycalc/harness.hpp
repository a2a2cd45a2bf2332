#pragma once

// Runs the calculus rules on instances, cross-checks them against the
// oracles and renders JSON-lines reports.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "polycalc/generators.hpp"
#include "polycalc/instance.hpp"
#include "polycalc/oracles.hpp"

namespace polycalc {

enum class Verdict { kPass, kFail, kSkip };
std::string_view verdict_name(Verdict v);

struct Report {
  std::string id;
  Kind kind = Kind::kSupportIntersection;
  Verdict verdict = Verdict::kPass;
  std::string reason;  // empty on pass
  Json qc;             // null when the kind has no qualification condition
  Json witnesses = Json::array();
  OracleReport oracle;
  // On fail: the instance cut down to the failing probe.
  std::optional<Json> counterexample;
};

Json to_json(const Report& report);

struct HarnessConfig {
  std::uint64_t oracle_seed = 0;
  std::size_t oracle_samples = 100;
};

// Input errors (ParseError, SchemaError, DimensionMismatch) propagate; every
// other library error turns the affected probe into a skip.
Report run_instance(const Instance& instance, const HarnessConfig& config = {});
Report run_check(const std::filesystem::path& file,
                 const HarnessConfig& config = {});

struct FuzzOptions {
  Kind kind = Kind::kSupportIntersection;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  GeneratorOptions generator;
  HarnessConfig config;
};

struct FuzzSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skip = 0;
  std::size_t generation_failures = 0;

  std::size_t total() const { return pass + fail + skip; }
};

// Reports go to `reports` as JSON lines in instance order when given.
FuzzSummary fuzz(const FuzzOptions& options, std::ostream* reports = nullptr);
std::string summary_line(Kind kind, const FuzzSummary& summary);

// H- and V-forms of everything in the payload plus probe evaluations.
std::string show(const Instance& instance);

}  // namespace polycalc
