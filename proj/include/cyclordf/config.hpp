#pragma once

// Run configuration: a sectioned key = value file (see docs/config.md).
// Unknown sections or keys are errors; every value is checked against the
// preconditions of the module that consumes it at parse time.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclordf/sampling.hpp"
#include "cyclordf/source_models.hpp"

namespace cyclordf {

enum class TaskKind { RdfCurve, PhaseSweep, BlockSweep, Validate, CodecBaseline };

std::string to_string(TaskKind t);

struct RunConfig {
  CtSourceModel model;

  int p = 1;
  EpsilonSpec epsilon = EpsilonSpec::rational(0, 1);
  std::optional<double> target_ts;
  double phase = 0.0;
  int phase_grid = 16;
  std::vector<int> blocks;
  int blocklength = 32;

  TaskKind task = TaskKind::RdfCurve;
  std::vector<double> distortions;
  int tail_window = 5;
  double tolerance = 1e-4;

  std::int64_t draws = 100000;
  std::uint64_t seed = 1;

  int jobs = 0;  // 0: not set in the file

  std::string prefix = "cyclordf_out";

  /// Resolved (key, value) pairs in schema order, echoed into the manifest.
  std::vector<std::pair<std::string, std::string>> echo;
  std::vector<std::string> warnings;

  double sampling_interval() const { return model.profile.period / (p + epsilon.value()); }
};

/// Parses the file, applies `overrides` ("section.key=value") and validates.
/// Throws Error(Config) whose message starts with the offending key.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Same as load_config for in-memory text.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

}  // namespace cyclordf
