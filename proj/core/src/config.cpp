#include "heatrisk/io/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "heatrisk/errors.hpp"
#include "heatrisk/io/manifest.hpp"

namespace heatrisk::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& raw) {
  fs::path p(raw);
  return p.is_absolute() ? p : base / p;
}

std::string hourly_output_name(HourlyOutput mode) {
  switch (mode) {
    case HourlyOutput::none: return "none";
    case HourlyOutput::nordic: return "nordic";
    case HourlyOutput::full: return "full";
  }
  return "?";
}

HourlyOutput hourly_output_from(const std::string& name) {
  if (name == "none") return HourlyOutput::none;
  if (name == "nordic") return HourlyOutput::nordic;
  if (name == "full") return HourlyOutput::full;
  throw ConfigError("hourly_output must be none|nordic|full, got '" + name +
                    "'");
}

}  // namespace

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }

  fs::path base = path.parent_path();
  if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env) {
    base = fs::path(env);
  }

  RunConfig config;
  try {
    for (const auto& c : doc.at("countries")) {
      CountryConfig cc;
      cc.id = c.at("id").get<std::string>();
      cc.consumption_csv = resolve(base, c.at("consumption_csv").get<std::string>());
      cc.weather_csv = resolve(base, c.at("weather_csv").get<std::string>());
      cc.holidays_csv = resolve(base, c.at("holidays_csv").get<std::string>());
      cc.macro_csv = resolve(base, c.at("macro_csv").get<std::string>());
      const auto& inv = c.at("inventory");
      cc.inventory.country = cc.id;
      cc.inventory.fossil_space_water_twh =
          inv.at("fossil_space_water_twh").get<double>();
      cc.inventory.fossil_district_twh =
          inv.at("fossil_district_twh").get<double>();
      cc.inventory.direct_electric_sw_twh =
          inv.at("direct_electric_sw_twh").get<double>();
      cc.inventory.fossil_process_twh =
          inv.at("fossil_process_twh").get<double>();
      cc.vre.country = cc.id;
      cc.vre.wind_gw = c.at("wind_gw").get<double>();
      cc.vre.solar_gw = c.at("solar_gw").get<double>();
      config.countries.push_back(std::move(cc));
    }
    config.capacity_factors_csv =
        resolve(base, doc.at("capacity_factors_csv").get<std::string>());
    if (doc.contains("shares")) {
      config.shares = doc.at("shares").get<std::vector<double>>();
    }
    if (doc.contains("shift_days")) {
      config.shift_days = doc.at("shift_days").get<std::vector<int>>();
    }
    if (doc.contains("target_year")) {
      config.target_year = doc.at("target_year").get<int>();
    }
    if (doc.contains("min_scenarios")) {
      config.min_scenarios = doc.at("min_scenarios").get<int>();
    }
    if (doc.contains("replacement_factor")) {
      config.replacement_factor = doc.at("replacement_factor").get<double>();
    }
    if (doc.contains("train_fraction")) {
      config.train_fraction = doc.at("train_fraction").get<double>();
    }
    if (doc.contains("output_dir")) {
      config.output_dir = fs::path(doc.at("output_dir").get<std::string>());
    }
    if (doc.contains("jobs")) config.jobs = doc.at("jobs").get<int>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("hourly_output")) {
      config.hourly_output =
          hourly_output_from(doc.at("hourly_output").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }

  validate(config);
  return config;
}

void validate(const RunConfig& config) {
  if (config.countries.empty()) {
    throw ConfigError("config lists no countries");
  }
  for (const auto& c : config.countries) {
    if (c.id.empty()) throw ConfigError("country id must not be empty");
    for (const auto& p : {c.consumption_csv, c.weather_csv, c.holidays_csv,
                          c.macro_csv}) {
      if (!fs::exists(p)) {
        throw ConfigError("input file does not exist: " + p.string());
      }
    }
    if (!(c.vre.wind_gw >= 0.0) || !(c.vre.solar_gw >= 0.0)) {
      throw ConfigError("VRE capacities for '" + c.id +
                        "' must be non-negative");
    }
  }
  if (!fs::exists(config.capacity_factors_csv)) {
    throw ConfigError("input file does not exist: " +
                      config.capacity_factors_csv.string());
  }
  if (config.shares.empty()) throw ConfigError("config lists no shares");
  for (double s : config.shares) {
    if (!(s >= 0.0) || !(s <= 1.0)) {
      throw ConfigError("share " + std::to_string(s) + " outside [0, 1]");
    }
  }
  if (config.shift_days.empty()) {
    throw ConfigError("config lists no shift days");
  }
  if (!(config.train_fraction > 0.0) || config.train_fraction > 1.0) {
    throw ConfigError("train_fraction must be in (0, 1]");
  }
  if (!(config.replacement_factor > 0.0)) {
    throw ConfigError("replacement_factor must be positive");
  }
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (config.min_scenarios < 0) {
    throw ConfigError("min_scenarios must be >= 0");
  }
}

std::string canonical_config_json(const RunConfig& config) {
  json doc;
  json countries = json::array();
  for (const auto& c : config.countries) {
    countries.push_back(
        {{"id", c.id},
         {"consumption_csv", c.consumption_csv.string()},
         {"weather_csv", c.weather_csv.string()},
         {"holidays_csv", c.holidays_csv.string()},
         {"macro_csv", c.macro_csv.string()},
         {"inventory",
          {{"fossil_space_water_twh", c.inventory.fossil_space_water_twh},
           {"fossil_district_twh", c.inventory.fossil_district_twh},
           {"direct_electric_sw_twh", c.inventory.direct_electric_sw_twh},
           {"fossil_process_twh", c.inventory.fossil_process_twh}}},
         {"wind_gw", c.vre.wind_gw},
         {"solar_gw", c.vre.solar_gw}});
  }
  doc["countries"] = countries;
  doc["capacity_factors_csv"] = config.capacity_factors_csv.string();
  doc["shares"] = config.shares;
  doc["shift_days"] = config.shift_days;
  doc["target_year"] = config.target_year;
  doc["min_scenarios"] = config.min_scenarios;
  doc["replacement_factor"] = config.replacement_factor;
  doc["train_fraction"] = config.train_fraction;
  doc["seed"] = config.seed;
  doc["hourly_output"] = hourly_output_name(config.hourly_output);
  return doc.dump();
}

std::string config_hash(const RunConfig& config) {
  return hex64(fnv1a64(canonical_config_json(config)));
}

}  // namespace heatrisk::io
