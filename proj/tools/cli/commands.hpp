#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "cli/run_config.hpp"

namespace clusterforge::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2 };

struct CommandResult {
  int exit_code = kPass;
  nlohmann::ordered_json document;
  std::vector<std::string> csv_columns;
  std::vector<std::vector<std::string>> csv_rows;
};

/// Runs a validated config. Throws ConfigError for semantic input errors
/// (bad potential parameters, non-tempered potentials).
CommandResult execute(const RunConfig& cfg);

void write_json(std::ostream& out, const CommandResult& r);
void write_csv(std::ostream& out, const CommandResult& r);

/// Full command-line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace clusterforge::cli
