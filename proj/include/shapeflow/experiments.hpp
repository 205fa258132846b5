#pragma once

// Named experiments driven by a JSON config, writing results.csv,
// manifest.json and (for some experiments) trajectory.csv.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace shapeflow {

struct ExperimentInfo {
  std::string name;
  std::string summary;
  bool uses_seed = false;
};

const std::vector<ExperimentInfo>& experiment_catalog();

struct RunOverrides {
  std::optional<std::string> output_dir;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

struct RunSummary {
  std::string experiment;
  std::filesystem::path output_dir;
  bool partial = false;
  std::vector<std::string> files;
  nlohmann::json metrics;
};

/// Parses a config file; throws Error(Config) on I/O or syntax errors.
nlohmann::json read_config_file(const std::filesystem::path& path);

/// Validates the config, runs the experiment and writes its artifacts.
RunSummary run_experiment(const nlohmann::json& config, const RunOverrides& overrides = {});

/// {"error": {"kind": ..., "message": ...}}
nlohmann::json error_json(const std::string& kind, const std::string& message);

/// "%.16e" formatting used for every real-valued CSV entry.
std::string format_real(double v);

}  // namespace shapeflow
