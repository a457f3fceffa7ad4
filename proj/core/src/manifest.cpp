#include "heatrisk/io/manifest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "heatrisk/errors.hpp"

namespace heatrisk::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t fnv1a64(const std::string& text) {
  return fnv1a64(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

std::uint64_t fnv1a64_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const auto n = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string manifest_to_json(const RunManifest& manifest) {
  json doc;
  doc["format"] = "heatrisk-manifest/1";
  doc["config_hash"] = manifest.config_hash;
  doc["model_hashes"] = manifest.model_hashes;
  doc["scenario_count"] = manifest.scenario_count;
  doc["target_year"] = manifest.target_year;
  doc["input_coverage"] = manifest.input_coverage;
  json outputs = json::array();
  for (const auto& e : manifest.outputs) {
    outputs.push_back(
        {{"path", e.path}, {"checksum", e.checksum}, {"bytes", e.bytes}});
  }
  doc["outputs"] = outputs;
  return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("manifest parse error: ") + e.what());
  }
  try {
    RunManifest m;
    m.config_hash = doc.at("config_hash").get<std::string>();
    m.model_hashes =
        doc.at("model_hashes").get<std::map<std::string, std::string>>();
    m.scenario_count = doc.at("scenario_count").get<int>();
    m.target_year = doc.at("target_year").get<int>();
    m.input_coverage =
        doc.at("input_coverage").get<std::map<std::string, std::string>>();
    for (const auto& e : doc.at("outputs")) {
      m.outputs.push_back(OutputEntry{e.at("path").get<std::string>(),
                                      e.at("checksum").get<std::string>(),
                                      e.at("bytes").get<std::uint64_t>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("manifest field error: ") + e.what());
  }
}

void save_manifest(const fs::path& path, const RunManifest& manifest) {
  RunManifest sorted = manifest;
  std::sort(sorted.outputs.begin(), sorted.outputs.end(),
            [](const OutputEntry& a, const OutputEntry& b) {
              return a.path < b.path;
            });
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << manifest_to_json(sorted);
  if (!out) throw DataError("write failed: " + path.string());
}

RunManifest load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return manifest_from_json(buffer.str());
}

}  // namespace heatrisk::io
