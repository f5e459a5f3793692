#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclordf/config.hpp"

namespace cyclordf {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitBoundFailure = 4,
};

struct OutputFile {
  std::string path;
  std::string sha256;
};

struct TaskOutcome {
  std::vector<OutputFile> files;
  std::vector<std::string> failures;  // validation bounds that did not hold
  double wall_seconds = 0.0;
};

/// Executes the configured task with `jobs` workers and writes its CSVs under
/// cfg.prefix. Library errors propagate.
TaskOutcome execute_task(const RunConfig& cfg, int jobs);

struct RunOptions {
  std::vector<std::string> overrides;
  int jobs = 0;  // 0: CYCLORDF_JOBS, then run.jobs, then all cores
  std::optional<std::string> out_prefix;
};

/// Full CLI path: load, run, write CSVs + manifest. Returns an ExitCode and
/// reports problems on `log`.
int run(const std::string& config_path, const RunOptions& opts, std::ostream& log);

}  // namespace cyclordf
