#include "heatrisk/simulate.hpp"

#include <algorithm>

#include "heatrisk/errors.hpp"

namespace heatrisk {

std::vector<double> project_consumption(const ScenarioModel& model,
                                        const CountryScenarioWeather& weather,
                                        const CalendarGrid& grid,
                                        std::span<const double> gdp,
                                        std::span<const double> pop,
                                        const HolidayCalendar& holidays) {
  const std::size_t n = grid.size();
  if (weather.station_temps.size() != static_cast<std::size_t>(kStationCount)) {
    throw DataError("weather scenario for '" + weather.country +
                    "' does not carry 5 stations");
  }
  for (const auto& temps : weather.station_temps) {
    if (temps.size() != n) {
      throw DataError("weather scenario for '" + weather.country +
                      "' does not cover the full target year");
    }
  }
  const FeatureMatrix X = build_design_matrix(
      grid, weather.station_temps, gdp, pop, holidays, model.model.trend_origin);
  return predict_scenario(model, X);
}

std::vector<double> vre_generation(std::span<const double> cf,
                                   double capacity_gw) {
  if (!(capacity_gw >= 0.0)) {
    throw ConfigError("VRE capacity must be non-negative");
  }
  std::vector<double> out(cf.size());
  for (std::size_t i = 0; i < cf.size(); ++i) {
    if (!(cf[i] >= 0.0) || !(cf[i] <= 1.0)) {
      throw DataError("capacity factor outside [0, 1] at index " +
                      std::to_string(i));
    }
    out[i] = cf[i] * capacity_gw * 1000.0;
  }
  return out;
}

std::vector<double> residual_demand(std::span<const double> consumption,
                                    std::span<const double> wind,
                                    std::span<const double> solar) {
  if (consumption.size() != wind.size() || consumption.size() != solar.size()) {
    throw ContractError("residual demand inputs are misaligned");
  }
  std::vector<double> out(consumption.size());
  for (std::size_t i = 0; i < consumption.size(); ++i) {
    out[i] = consumption[i] - wind[i] - solar[i];
  }
  return out;
}

RegionSeries make_region_series(std::string region,
                                std::vector<double> consumption,
                                std::vector<double> wind,
                                std::vector<double> solar) {
  RegionSeries rs;
  rs.region = std::move(region);
  rs.residual = residual_demand(consumption, wind, solar);
  rs.consumption = std::move(consumption);
  rs.wind = std::move(wind);
  rs.solar = std::move(solar);
  rs.surplus_hours = static_cast<int>(
      std::count_if(rs.residual.begin(), rs.residual.end(),
                    [](double v) { return v < 0.0; }));
  return rs;
}

RegionSeries aggregate_nordic(std::span<const RegionSeries> countries) {
  if (countries.empty()) {
    throw ContractError("cannot aggregate an empty region list");
  }
  const std::size_t n = countries.front().consumption.size();
  std::vector<double> consumption(n, 0.0), wind(n, 0.0), solar(n, 0.0);
  for (const auto& c : countries) {
    if (c.consumption.size() != n || c.wind.size() != n ||
        c.solar.size() != n) {
      throw ContractError("region '" + c.region +
                          "' is not on the common hourly grid");
    }
    for (std::size_t i = 0; i < n; ++i) {
      consumption[i] += c.consumption[i];
      wind[i] += c.wind[i];
      solar[i] += c.solar[i];
    }
  }
  return make_region_series(kNordicRegion, std::move(consumption),
                            std::move(wind), std::move(solar));
}

ScenarioMetrics metrics_for(const RegionSeries& region,
                            const std::string& scenario_id) {
  ScenarioMetrics m;
  m.scenario_id = scenario_id;
  m.region = region.region;
  double total = 0.0;
  for (double v : region.consumption) total += v;
  m.total_twh = total / 1e6;
  const auto peak_c =
      std::max_element(region.consumption.begin(), region.consumption.end());
  const auto peak_r =
      std::max_element(region.residual.begin(), region.residual.end());
  m.peak_consumption_gwh =
      peak_c == region.consumption.end() ? 0.0 : *peak_c / 1e3;
  m.peak_residual_gwh = peak_r == region.residual.end() ? 0.0 : *peak_r / 1e3;
  return m;
}

}  // namespace heatrisk
