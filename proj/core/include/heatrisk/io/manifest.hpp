#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace heatrisk::io {

/// FNV-1a 64-bit, the checksum used throughout the manifest.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::uint64_t fnv1a64(const std::string& text);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string hex64(std::uint64_t value);

struct OutputEntry {
  std::string path;  // relative to the run directory
  std::string checksum;
  std::uint64_t bytes = 0;
};

/// What a pipeline run produced. Deterministic: carries data timestamps
/// (coverage of the inputs), never wall-clock time, so identical configs
/// yield byte-identical manifests.
struct RunManifest {
  std::string config_hash;
  std::map<std::string, std::string> model_hashes;  // country -> checksum
  int scenario_count = 0;
  int target_year = 0;
  std::map<std::string, std::string> input_coverage;  // label -> ISO span
  std::vector<OutputEntry> outputs;                   // sorted by path
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

void save_manifest(const std::filesystem::path& path,
                   const RunManifest& manifest);
RunManifest load_manifest(const std::filesystem::path& path);

}  // namespace heatrisk::io
