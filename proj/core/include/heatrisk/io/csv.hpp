#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heatrisk/calendar.hpp"
#include "heatrisk/features.hpp"
#include "heatrisk/series.hpp"

namespace heatrisk::io {

/// Gap policy: runs of up to 6 missing hours are linearly interpolated (with
/// a warning); anything longer, or more than 1% of the grid in total, is a
/// data error.
inline constexpr int kMaxGapHours = 6;
inline constexpr double kMaxGapFraction = 0.01;

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

struct Gap {
  UtcHour first_missing = 0;
  int length = 0;
};

struct LoadedSeries {
  HourlySeries series;
  std::vector<Gap> gaps;  // interpolated runs
};

/// Generic two-column reader: `timestamp,<value_header>`.
LoadedSeries load_hourly_csv(const std::filesystem::path& path,
                             const std::string& value_header, Unit unit);

/// Schema `timestamp,mwh`.
LoadedSeries load_consumption_csv(const std::filesystem::path& path);

void write_hourly_csv(const std::filesystem::path& path,
                      const HourlySeries& series,
                      const std::string& value_header);

/// Schema `timestamp,station_id,temp_c`; stations keep file order, which
/// fixes the hdh_i / cdh_i column assignment.
std::vector<StationTemperature> load_weather_csv(
    const std::filesystem::path& path);

struct CapacityFactors {
  std::string country;
  HourlySeries wind;
  HourlySeries solar;
};

/// Schema `timestamp,country,wind_cf,solar_cf`; factors must lie in [0, 1].
std::vector<CapacityFactors> load_capacity_factors_csv(
    const std::filesystem::path& path);

/// Annual macro drivers, schema `year,gdp,pop`, anchored at Jan 1 00:00 of
/// each year and linearly interpolated in between.
class MacroTable {
public:
  MacroTable(std::vector<int> years, std::vector<double> gdp,
             std::vector<double> pop);

  double gdp_at(UtcHour t) const;
  double pop_at(UtcHour t) const;

  UtcHour first_anchor() const { return anchors_.front(); }
  UtcHour last_anchor() const { return anchors_.back(); }
  bool covers(UtcHour from, UtcHour to) const {
    return from >= first_anchor() && to <= last_anchor() + 1;
  }

  HourlySeries gdp_hourly() const;
  HourlySeries pop_hourly() const;

private:
  double interpolate(UtcHour t, const std::vector<double>& values) const;
  HourlySeries materialize(const std::vector<double>& values, Unit unit) const;

  std::vector<UtcHour> anchors_;
  std::vector<double> gdp_;
  std::vector<double> pop_;
};

MacroTable load_macro_csv(const std::filesystem::path& path);

/// The hourly GDP/POP pair between the first and last anchor.
std::pair<HourlySeries, HourlySeries> load_macro(
    const std::filesystem::path& path);

/// Schema `date`, one holiday per row.
HolidayCalendar load_holidays_csv(const std::filesystem::path& path);

}  // namespace heatrisk::io
