#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatrisk/features.hpp"
#include "heatrisk/series.hpp"

namespace heatrisk {

/// Historical weather of one country: five station temperature series plus
/// the coupled wind/solar capacity factors, all on one hourly grid.
struct CountryWeather {
  std::string country;
  std::vector<StationTemperature> stations;  // exactly 5
  HourlySeries wind_cf;
  HourlySeries solar_cf;
};

/// Multi-year weather archive, trimmed to the range every series covers.
struct WeatherArchive {
  std::vector<CountryWeather> countries;
  UtcHour start = 0;
  UtcHour end = 0;
  int first_year = 0;  // first fully covered calendar year
  int last_year = 0;   // last fully covered calendar year

  bool empty() const { return countries.empty(); }
  int full_years() const { return last_year - first_year + 1; }
};

/// Intersects all series to their common range and checks coverage of at
/// least one full calendar year.
WeatherArchive make_archive(std::vector<CountryWeather> countries);

/// One (source year, day shift) pair that yields a feasible scenario.
struct ScenarioPlan {
  int source_year = 0;
  int shift_days = 0;
  std::string id;
};

/// All feasible (year, shift) pairs of the archive for the target year, in
/// (year asc, shift asc) order. Pairs whose shifted lookups would leave the
/// archive are dropped.
std::vector<ScenarioPlan> scenario_plans(const WeatherArchive& archive,
                                         int target_year,
                                         std::span<const int> shift_days);

struct CountryScenarioWeather {
  std::string country;
  std::vector<std::vector<double>> station_temps;  // 5 x hours
  std::vector<double> wind_cf;
  std::vector<double> solar_cf;
};

/// One simulated weather year on the 8760-hour target timeline. Every hour i
/// is a bit-exact copy of the archive at source_hours[i]; all series of the
/// scenario share that mapping.
struct WeatherScenario {
  std::string scenario_id;
  int source_year = 0;
  int shift_days = 0;
  int target_year = 0;
  std::vector<UtcHour> source_hours;
  std::vector<CountryScenarioWeather> countries;
};

WeatherScenario materialize_scenario(const WeatherArchive& archive,
                                     const ScenarioPlan& plan,
                                     int target_year);

/// Plans plus materialization in one call.
std::vector<WeatherScenario> shifted_date_scenarios(
    const WeatherArchive& archive, int target_year,
    std::span<const int> shift_days);

/// Aligns one full source year onto the target year's real calendar by
/// month/day/hour. Feb 29 is dropped (leap -> non-leap) or synthesized by
/// repeating Feb 28 (non-leap -> leap).
HourlySeries map_to_target_calendar(const HourlySeries& source_year_series,
                                    int target_year);

/// The archive hour a target grid hour reads from, before shifting:
/// same month/day/hour in the source year (Feb 29 falls back to Feb 28).
UtcHour source_hour_for(const GridHour& target_hour, int source_year);

}  // namespace heatrisk
