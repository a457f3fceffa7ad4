#include "heatrisk/features.hpp"

#include <cmath>
#include <cstdio>

#include "heatrisk/errors.hpp"

namespace heatrisk {

double heating_degree_hours(double temp_c) {
  if (!std::isfinite(temp_c)) {
    throw DataError("non-finite temperature in heating_degree_hours");
  }
  return temp_c < kHdhCutoffC ? kHdhCutoffC - temp_c : 0.0;
}

double cooling_degree_hours(double temp_c) {
  if (!std::isfinite(temp_c)) {
    throw DataError("non-finite temperature in cooling_degree_hours");
  }
  return temp_c > kCdhCutoffC ? temp_c - kCdhCutoffC : 0.0;
}

namespace {

std::vector<std::string> make_schema() {
  std::vector<std::string> schema;
  schema.reserve(kFeatureCount);
  schema.emplace_back("intercept");
  schema.emplace_back("ln_gdp");
  schema.emplace_back("ln_pop");
  char buf[16];
  for (int i = 1; i <= kStationCount; ++i) {
    std::snprintf(buf, sizeof buf, "hdh_%d", i);
    schema.emplace_back(buf);
  }
  for (int i = 1; i <= kStationCount; ++i) {
    std::snprintf(buf, sizeof buf, "cdh_%d", i);
    schema.emplace_back(buf);
  }
  for (int h = 1; h <= 23; ++h) {
    std::snprintf(buf, sizeof buf, "hour_%d", h);
    schema.emplace_back(buf);
  }
  for (int m = 2; m <= 12; ++m) {
    std::snprintf(buf, sizeof buf, "month_%d", m);
    schema.emplace_back(buf);
  }
  for (int w = 2; w <= 7; ++w) {
    std::snprintf(buf, sizeof buf, "weekday_%d", w);
    schema.emplace_back(buf);
  }
  schema.emplace_back("holiday");
  schema.emplace_back("trend");
  return schema;
}

std::vector<FeatureGroup> make_groups() {
  const auto& schema = feature_schema();
  auto slice = [&](std::size_t first, std::size_t count) {
    return std::vector<std::string>(schema.begin() + static_cast<std::ptrdiff_t>(first),
                                    schema.begin() + static_cast<std::ptrdiff_t>(first + count));
  };
  return {
      {"gdp", slice(1, 1)},      {"pop", slice(2, 1)},
      {"hdh", slice(3, 5)},      {"cdh", slice(8, 5)},
      {"hour", slice(13, 23)},   {"month", slice(36, 11)},
      {"weekday", slice(47, 6)}, {"holiday", slice(53, 1)},
      {"trend", slice(54, 1)},
  };
}

// Column offsets in the canonical schema.
constexpr int kColIntercept = 0;
constexpr int kColLnGdp = 1;
constexpr int kColLnPop = 2;
constexpr int kColHdh = 3;
constexpr int kColCdh = 8;
constexpr int kColHour = 13;    // hour_1..hour_23
constexpr int kColMonth = 36;   // month_2..month_12
constexpr int kColWeekday = 47; // weekday_2..weekday_7
constexpr int kColHoliday = 53;
constexpr int kColTrend = 54;

}  // namespace

const std::vector<std::string>& feature_schema() {
  static const std::vector<std::string> schema = make_schema();
  return schema;
}

const std::vector<FeatureGroup>& feature_groups() {
  static const std::vector<FeatureGroup> groups = make_groups();
  return groups;
}

FeatureMatrix build_design_matrix(const CalendarGrid& grid,
                                  std::span<const std::vector<double>> station_temps,
                                  std::span<const double> gdp,
                                  std::span<const double> pop,
                                  const HolidayCalendar& holidays,
                                  UtcHour trend_origin) {
  const std::size_t n = grid.size();
  if (station_temps.size() != kStationCount) {
    throw ContractError("expected exactly 5 station series, got " +
                        std::to_string(station_temps.size()));
  }
  for (const auto& temps : station_temps) {
    if (temps.size() != n) {
      throw ContractError("station series length does not match grid");
    }
  }
  if (gdp.size() != n || pop.size() != n) {
    throw ContractError("gdp/pop length does not match grid");
  }

  FeatureMatrix out;
  out.schema = feature_schema();
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), kFeatureCount);
  auto& X = out.values;

  for (std::size_t i = 0; i < n; ++i) {
    const GridHour& gh = grid[i];
    const auto r = static_cast<Eigen::Index>(i);

    if (!(gdp[i] > 0.0) || !(pop[i] > 0.0)) {
      throw DataError("non-positive gdp/pop at " + format_iso_hour(gh.t));
    }

    X(r, kColIntercept) = 1.0;
    X(r, kColLnGdp) = std::log(gdp[i]);
    X(r, kColLnPop) = std::log(pop[i]);
    for (int s = 0; s < kStationCount; ++s) {
      const double temp = station_temps[static_cast<std::size_t>(s)][i];
      X(r, kColHdh + s) = heating_degree_hours(temp);
      X(r, kColCdh + s) = cooling_degree_hours(temp);
    }
    if (gh.hour >= 1) X(r, kColHour + gh.hour - 1) = 1.0;
    if (gh.month >= 2) X(r, kColMonth + gh.month - 2) = 1.0;
    if (gh.weekday >= 1) X(r, kColWeekday + gh.weekday - 1) = 1.0;
    if (holidays.contains(gh.day)) X(r, kColHoliday) = 1.0;
    X(r, kColTrend) = static_cast<double>(gh.t - trend_origin);
  }
  return out;
}

FeatureMatrix build_design_matrix(std::span<const StationTemperature> stations,
                                  const HourlySeries& gdp,
                                  const HourlySeries& pop,
                                  const HolidayCalendar& holidays,
                                  UtcHour trend_origin) {
  if (stations.size() != kStationCount) {
    throw ContractError("expected exactly 5 stations, got " +
                        std::to_string(stations.size()));
  }
  const HourlySeries& ref = stations[0].series;
  for (const auto& st : stations) {
    if (!st.series.same_grid(ref)) {
      throw ContractError("station '" + st.station_id +
                          "' is not on the common hourly grid");
    }
  }
  if (!gdp.same_grid(ref) || !pop.same_grid(ref)) {
    throw ContractError("gdp/pop series are not on the station grid");
  }

  std::vector<std::vector<double>> temps;
  temps.reserve(stations.size());
  for (const auto& st : stations) temps.push_back(st.series.values);

  const CalendarGrid grid = CalendarGrid::contiguous(ref.start, ref.size());
  return build_design_matrix(grid, temps, gdp.values, pop.values, holidays,
                             trend_origin);
}

}  // namespace heatrisk
