#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "heatrisk/scenario.hpp"
#include "heatrisk/simulate.hpp"

namespace heatrisk::io {

/// Env var naming the default root for relative data paths in a config.
inline constexpr const char* kDataDirEnv = "HEATRISK_DATA_DIR";

enum class HourlyOutput { none, nordic, full };

struct CountryConfig {
  std::string id;
  std::filesystem::path consumption_csv;
  std::filesystem::path weather_csv;
  std::filesystem::path holidays_csv;
  std::filesystem::path macro_csv;
  HeatingInventory inventory;
  VreCapacity vre;
};

struct RunConfig {
  std::vector<CountryConfig> countries;
  std::filesystem::path capacity_factors_csv;
  std::vector<double> shares{0.0, 0.5, 1.0};
  std::vector<int> shift_days{-4, -3, -2, -1, 0, 1, 2, 3, 4};
  int target_year = 2040;
  int min_scenarios = 0;  // 0 disables the feasibility check
  double replacement_factor = kDefaultReplacementFactor;
  double train_fraction = 0.75;
  std::filesystem::path output_dir = "out";
  int jobs = 1;
  std::uint64_t seed = 0;  // reserved
  HourlyOutput hourly_output = HourlyOutput::nordic;
};

/// Parses and validates a config file. Relative data paths resolve against
/// HEATRISK_DATA_DIR when set, else against the config file's directory;
/// output_dir resolves against the current working directory.
RunConfig load_config(const std::filesystem::path& path);

/// Validation only (paths exist, shares in range, ...); load_config calls
/// this, CLI overrides re-validate.
void validate(const RunConfig& config);

/// Canonical serialization of the effective config. Execution knobs that
/// cannot change outputs (jobs, output_dir) are excluded, so the derived
/// hash identifies what a run computes.
std::string canonical_config_json(const RunConfig& config);
std::string config_hash(const RunConfig& config);

}  // namespace heatrisk::io
