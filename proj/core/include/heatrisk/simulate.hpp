#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatrisk/calendar.hpp"
#include "heatrisk/scenario.hpp"
#include "heatrisk/weathergen.hpp"

namespace heatrisk {

inline constexpr const char* kNordicRegion = "nordic";

struct VreCapacity {
  std::string country;
  double wind_gw = 0.0;
  double solar_gw = 0.0;
};

/// Hourly simulation outcome for one region (a country or the copperplate
/// Nordic aggregate). residual(t) = consumption(t) - wind(t) - solar(t)
/// holds exactly; hours where it goes negative (VRE surplus) are counted.
struct RegionSeries {
  std::string region;
  std::vector<double> consumption;  // MWh
  std::vector<double> wind;         // MWh
  std::vector<double> solar;        // MWh
  std::vector<double> residual;     // MWh, may be negative
  int surplus_hours = 0;
};

struct ScenarioSimulation {
  std::string scenario_id;
  std::vector<RegionSeries> countries;
  RegionSeries nordic;
};

/// Hourly 2040 consumption of one country under one weather scenario:
/// exp(X beta') + baseload. gdp/pop are hourly driver levels aligned to the
/// grid.
std::vector<double> project_consumption(const ScenarioModel& model,
                                        const CountryScenarioWeather& weather,
                                        const CalendarGrid& grid,
                                        std::span<const double> gdp,
                                        std::span<const double> pop,
                                        const HolidayCalendar& holidays);

/// cf(t) * capacity_gw * 1000, MWh per hour.
std::vector<double> vre_generation(std::span<const double> cf,
                                   double capacity_gw);

RegionSeries make_region_series(std::string region,
                                std::vector<double> consumption,
                                std::vector<double> wind,
                                std::vector<double> solar);

/// consumption - wind - solar, exact per hour.
std::vector<double> residual_demand(std::span<const double> consumption,
                                    std::span<const double> wind,
                                    std::span<const double> solar);

/// Per-hour copperplate sum of the country series.
RegionSeries aggregate_nordic(std::span<const RegionSeries> countries);

/// Annual scalar metrics of one region-year.
struct ScenarioMetrics {
  std::string scenario_id;
  std::string region;
  double total_twh = 0.0;
  double peak_consumption_gwh = 0.0;
  double peak_residual_gwh = 0.0;
};

ScenarioMetrics metrics_for(const RegionSeries& region,
                            const std::string& scenario_id);

}  // namespace heatrisk
