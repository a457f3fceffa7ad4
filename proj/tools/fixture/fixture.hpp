#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "heatrisk/features.hpp"
#include "heatrisk/io/csv.hpp"
#include "heatrisk/scenario.hpp"
#include "heatrisk/series.hpp"
#include "heatrisk/simulate.hpp"

namespace heatrisk::fixture {

/// Deterministic RNG: mt19937_64 with hand-rolled Box-Muller so the stream
/// does not depend on the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double normal();

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct FixtureSpec {
  int first_weather_year = 2010;
  int last_weather_year = 2017;
  int first_consumption_year = 2013;
  int last_consumption_year = 2016;
  int first_macro_year = 2009;
  int last_macro_year = 2042;
  int target_year = 2039;
  std::uint64_t seed = 77001;
  double noise_sigma = 0.03;
  std::vector<std::string> countries{"NO", "SE", "DK", "FI"};
};

/// Everything synthesized for one country, in memory.
struct SyntheticCountry {
  std::string id;
  std::vector<StationTemperature> stations;  // weather years
  HourlySeries wind_cf;
  HourlySeries solar_cf;
  HourlySeries consumption;  // consumption years
  std::vector<std::int64_t> holiday_days;
  std::vector<int> macro_years;
  std::vector<double> gdp;
  std::vector<double> pop;
  HeatingInventory inventory;
  VreCapacity vre;
  Eigen::VectorXd true_beta;  // generating coefficients, feature schema order
  UtcHour trend_origin = 0;
};

SyntheticCountry make_country(const FixtureSpec& spec, std::size_t index);

/// Writes the bundle (per-country CSVs, capacity factors, config.json) under
/// `dir` and returns the config path. Deterministic for a given spec.
std::filesystem::path write_fixture(const FixtureSpec& spec,
                                    const std::filesystem::path& dir);

}  // namespace heatrisk::fixture
