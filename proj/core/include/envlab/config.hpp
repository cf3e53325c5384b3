#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "envlab/envelope_numeric.hpp"
#include "envlab/flow.hpp"
#include "envlab/harness.hpp"

namespace envlab {

inline constexpr int kSchemaVersion = 1;

struct DetectorParams {
  std::vector<double> epsilon_ladder{0.25, 0.1, 0.05, 0.01};
  std::vector<double> delta_grid{0.1, 0.01, 1e-3, 1e-4};
  std::vector<double> sensitivity_radii{0.1, 0.01, 1e-3};
  /// Single entourage size for proximality and rigidity scans.
  double epsilon = 0.05;
  std::int64_t horizon = 10'000;
  int grid_resolution = 16;
  std::int64_t gap_bound = 100;
  std::int64_t run_length = 5;

  bool operator==(const DetectorParams&) const = default;
};

struct SemigroupParams {
  double epsilon = 0.05;
  std::int64_t horizon = 1'000;
  ScanDirections directions = ScanDirections::both;
  int grid_resolution = 16;

  bool operator==(const SemigroupParams&) const = default;
};

struct OutputParams {
  /// Empty means: $ENVLAB_OUT_DIR, else the working directory.
  std::string dir;

  bool operator==(const OutputParams&) const = default;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  FlowDescriptor flow;
  DetectorParams detectors;
  SemigroupParams semigroup;
  HarnessConfig theorems;
  OutputParams output;
  int workers = 1;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the JSON config format (// and /* */ comments allowed). Missing
/// keys take their defaults. Throws ConfigError naming the offending key, or
/// the line and column for malformed text.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Full config with every key spelled out; parse_config inverts it exactly.
std::string serialize_config(const ExperimentConfig& config);

/// Accepts a decimal number or a preset name ("golden", "silver").
double parse_float_preset(std::string_view text);

std::string_view to_string(ScanDirections d);

}  // namespace envlab
