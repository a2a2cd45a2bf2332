// polycalc: check instance files, fuzz the calculus rules, print instances.
//
// Exit codes: 0 when everything passed (skips included), 1 when some rule
// was violated, 2 on unreadable or invalid input.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "polycalc/errors.hpp"
#include "polycalc/harness.hpp"
#include "polycalc/instance.hpp"

namespace {

using namespace polycalc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "-" means standard output; an empty path means no report file.
class ReportSink {
 public:
  explicit ReportSink(const std::string& path) {
    if (path.empty()) return;
    if (path == "-") {
      out_ = &std::cout;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw InputError("cannot write report file " + path);
    out_ = file_.get();
  }
  std::ostream* get() const { return out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_ = nullptr;
};

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  static const std::regex pattern(R"((\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw InputError("--dims expects A..B, got '" + text + "'");
  }
  const std::size_t lo = std::stoul(m[1]);
  const std::size_t hi = m[2].matched ? std::stoul(m[2]) : lo;
  if (lo < 1 || hi > 6 || lo > hi) {
    throw InputError("--dims must satisfy 1 <= A <= B <= 6");
  }
  return {lo, hi};
}

std::vector<Kind> parse_kinds(const std::string& text) {
  if (text == "all") return all_kinds();
  const auto kind = parse_kind(text);
  if (!kind) throw InputError("unknown kind '" + text + "'");
  return {*kind};
}

bool is_input_error(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kParseError:
    case ErrorKind::kSchemaError:
    case ErrorKind::kDimensionMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact polyhedral convex calculus: rule checker and fuzzer"};
  app.require_subcommand(1);

  HarnessConfig config;
  app.add_option("--oracle-seed", config.oracle_seed,
                 "Seed for the sampling oracles");
  app.add_option("--oracle-samples", config.oracle_samples,
                 "Samples drawn per sampling oracle call");

  std::string check_file;
  std::string check_report;
  auto* check = app.add_subcommand("check", "Run the rule named by an instance file");
  check->add_option("file", check_file, "Instance JSON file")->required();
  check->add_option("--report", check_report,
                    "Write the JSON report here ('-' for stdout)");

  std::string fuzz_kind;
  std::uint64_t fuzz_seed = 0;
  std::size_t fuzz_count = 100;
  std::string fuzz_dims = "1..3";
  std::size_t fuzz_budget = 3;
  std::string fuzz_report;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Check seeded random instances");
  fuzz_cmd->add_option("--kind", fuzz_kind, "Instance kind, or 'all'")->required();
  fuzz_cmd->add_option("--seed", fuzz_seed, "Generator seed");
  fuzz_cmd->add_option("--count", fuzz_count, "Instances per kind");
  fuzz_cmd->add_option("--dims", fuzz_dims, "Dimension range A..B within 1..6");
  fuzz_cmd->add_option("--budget", fuzz_budget, "Extra random rows per set (1..12)")
      ->check(CLI::Range(1, 12));
  fuzz_cmd->add_option("--report", fuzz_report,
                       "Write JSON-lines reports here ('-' for stdout)");

  std::string show_file;
  auto* show_cmd = app.add_subcommand("show", "Print H- and V-forms of an instance");
  show_cmd->add_option("file", show_file, "Instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*check) {
      ReportSink sink(check_report);
      const Report report = run_check(check_file, config);
      if (sink.get()) *sink.get() << to_json(report).dump() << '\n';
      std::cout << report.id << ": " << verdict_name(report.verdict);
      if (!report.reason.empty()) std::cout << " (" << report.reason << ")";
      std::cout << '\n';
      return report.verdict == Verdict::kFail ? kExitFail : kExitPass;
    }
    if (*fuzz_cmd) {
      const auto kinds = parse_kinds(fuzz_kind);
      const auto [lo, hi] = parse_dims(fuzz_dims);
      ReportSink sink(fuzz_report);
      bool any_fail = false;
      for (Kind kind : kinds) {
        FuzzOptions opts;
        opts.kind = kind;
        opts.seed = fuzz_seed;
        opts.count = fuzz_count;
        opts.generator.dim_lo = lo;
        opts.generator.dim_hi = hi;
        opts.generator.budget = fuzz_budget;
        opts.config = config;
        const FuzzSummary s = fuzz(opts, sink.get());
        std::cout << summary_line(kind, s) << '\n';
        any_fail = any_fail || s.fail > 0;
      }
      return any_fail ? kExitFail : kExitPass;
    }
    if (*show_cmd) {
      std::cout << show(load_instance(show_file));
      return kExitPass;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_input_error(e) ? kExitInput : kExitFail;
  }
  return kExitInput;
}
