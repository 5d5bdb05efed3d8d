#pragma once

#include <optional>
#include <string>

#include "mono/types.hpp"

namespace mono {

/// Scenario file rejected by schema validation (CLI exit 64).
struct ScenarioError : Error {
  using Error::Error;
};

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides the scenario's `out`
  std::optional<long> seed;
  std::optional<double> tol_solver;
  std::optional<double> tol_accept;
  std::optional<double> tol_reject;
  int jobs = 1;
};

/// In-memory artifacts of one scenario run.  The CSV body is deterministic
/// for a fixed (scenario, seed); wall time lives only in the summary JSON.
struct RunResult {
  int exit_code = 0;  // 0 accept/pass/ok, 1 reject/fail, 2 inconclusive
  std::string task;
  std::string verdict;
  double max_residual = 0.0;
  std::string csv;               // steps.csv body, header always present
  std::string summary_json;      // verdict, max residual, wall time, config echo, seed
  std::string certificate_json;  // certify task only
  std::string out_dir;           // resolved output directory ("" when none)
};

RunResult run_scenario_json(const std::string& json_text, const RunOptions& opts = {});
RunResult run_scenario_file(const std::string& path, const RunOptions& opts = {});

/// Writes steps.csv, summary.json and (when present) certificate.json.
void write_artifacts(const RunResult& result, const std::string& out_dir);

}  // namespace mono
