#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "heatrisk/calendar.hpp"
#include "heatrisk/series.hpp"

namespace heatrisk {

inline constexpr double kHdhCutoffC = 17.0;
inline constexpr double kCdhCutoffC = 22.0;
inline constexpr int kStationCount = 5;
inline constexpr int kFeatureCount = 55;  // intercept + 54 regressors

/// max(0, 17 - temp). Throws DataError on non-finite input.
double heating_degree_hours(double temp_c);

/// max(0, temp - 22). Throws DataError on non-finite input.
double cooling_degree_hours(double temp_c);

/// Canonical column order of the consumption model design matrix:
/// intercept, ln_gdp, ln_pop, hdh_1..5, cdh_1..5, hour_1..23 (hour 0 is the
/// baseline), month_2..12 (January baseline), weekday_2..7 (Monday baseline),
/// holiday, trend.
const std::vector<std::string>& feature_schema();

struct FeatureGroup {
  std::string name;
  std::vector<std::string> columns;
};

/// Regressor groups used for effect sizes: gdp, pop, hdh, cdh, hour, month,
/// weekday, holiday, trend.
const std::vector<FeatureGroup>& feature_groups();

struct FeatureMatrix {
  Eigen::MatrixXd values;  // rows x 55
  std::vector<std::string> schema;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

struct StationTemperature {
  std::string station_id;
  HourlySeries series;  // degC
};

/// Design matrix over an explicit calendar grid. Station order fixes the
/// hdh_i / cdh_i column assignment. gdp/pop are per-hour levels (not logs)
/// and must be strictly positive; the trend column counts hours since
/// `trend_origin`.
FeatureMatrix build_design_matrix(const CalendarGrid& grid,
                                  std::span<const std::vector<double>> station_temps,
                                  std::span<const double> gdp,
                                  std::span<const double> pop,
                                  const HolidayCalendar& holidays,
                                  UtcHour trend_origin);

/// Convenience overload for contiguous historical series. All series must
/// share an identical hourly grid.
FeatureMatrix build_design_matrix(std::span<const StationTemperature> stations,
                                  const HourlySeries& gdp,
                                  const HourlySeries& pop,
                                  const HolidayCalendar& holidays,
                                  UtcHour trend_origin);

}  // namespace heatrisk
