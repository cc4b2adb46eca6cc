#pragma once

// Scenario runner: loads JSON fixture configs, dispatches the residue and
// transform pipelines over the requested test points, and emits CSV/JSON
// report tables with deterministic formatting.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "corad/types.hpp"

namespace corad::cli {

struct RunOptions {
  std::string subcommand;  // residue | radon | fantappie | invert | verify
  std::string scenario_path;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"csv", "json"};
  // Flag overrides; config values apply when unset.
  std::optional<double> tol;
  std::optional<int> kappa;
  std::optional<int> grid;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  nlohmann::json metadata;
};

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 tolerance failure, 2 input error, 3 I/O error
  ResultTable table;
  std::vector<std::string> written_files;
  std::string diagnostic;  // non-empty on exit codes 2/3
};

/// Executes one subcommand over a scenario file. Never throws: input and
/// I/O problems come back as exit codes with a diagnostic.
RunOutcome run_scenario(const RunOptions& options);

/// Writes the table in the requested formats; returns the file paths.
/// Throws Error(io_error) on unwritable paths.
std::vector<std::string> emit_report(const ResultTable& table,
                                     const std::vector<std::string>& formats,
                                     const std::string& out_dir,
                                     const std::string& name);

}  // namespace corad::cli
