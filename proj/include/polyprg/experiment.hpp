#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyprg/corpus.hpp"
#include "polyprg/fraction.hpp"
#include "polyprg/hsg.hpp"

namespace polyprg {

/// Everything a run depends on. Unset optionals take per-command defaults,
/// which are echoed into the report.
struct ExperimentConfig {
  /// "hyph", "factor2", "lecerf", "bertini-scan", "hsg-density",
  /// "prg-distance", "plane-scan", or "suite" with `suite` set.
  std::string command;
  std::string suite;
  std::optional<std::string> field;
  std::optional<unsigned> n;
  std::optional<unsigned> sigma;
  std::optional<unsigned> degree;
  HsgKind hsg = HsgKind::Grid;
  std::optional<Fraction> c0;
  std::optional<Fraction> delta;
  /// Path of a file holding one polynomial.
  std::optional<std::string> poly_file;
  /// "builtin", "random", or the path of a JSON corpus file.
  std::string corpus = "builtin";
  /// Substring filter on corpus entry names.
  std::string filter;
  unsigned random_count = 8;
  std::uint64_t rng_seed = 1;
  std::string mode = "exact";
  std::uint64_t samples = 10'000'000;
  std::optional<std::string> point;
  unsigned workers = 1;
  bool timings = false;
};

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

std::vector<std::string> suite_names();

struct RunResult {
  nlohmann::json report;
  bool ok = false;
};

/// Dispatches the configured command. Failures inside an instance become
/// structured error entries; configuration errors become a top-level
/// "error" entry. `ok` holds iff every asserted invariant held.
RunResult run(const ExperimentConfig& config);

/// One CSV row per report instance; nested values are JSON-encoded.
std::string report_to_csv(const nlohmann::json& report);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace polyprg
