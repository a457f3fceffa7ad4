#pragma once

#include <string>
#include <vector>

#include "heatrisk/calibrate.hpp"
#include "heatrisk/io/config.hpp"
#include "heatrisk/io/csv.hpp"

namespace heatrisk {

/// Ingested inputs of one country (capacity factors are attached separately
/// since they live in a shared file).
struct CountryInputs {
  std::string id;
  HourlySeries consumption;
  std::vector<StationTemperature> stations;
  HolidayCalendar holidays;
  io::MacroTable macro;
};

CountryInputs load_country_inputs(const io::CountryConfig& config);

/// The aligned regression dataset: design matrix, ln-consumption target and
/// the MWh actuals, restricted to the hours all inputs cover.
struct CalibrationDataset {
  CalendarGrid grid;
  FeatureMatrix X;
  std::vector<double> y;            // ln consumption
  std::vector<double> consumption;  // MWh
  UtcHour trend_origin = 0;
};

CalibrationDataset build_calibration_dataset(const CountryInputs& inputs);

struct AccuracyRow {
  std::string sample;  // train | valid | full
  std::size_t n_hours = 0;
  ErrorMetrics metrics;
};

struct CountryCalibration {
  CalibratedModel model;  // full-sample refit
  std::vector<AccuracyRow> accuracy;
};

/// 75/25 chronological split, train fit with in/out-of-sample accuracy, then
/// the full-sample refit used for projections.
CountryCalibration calibrate_country(const CalibrationDataset& dataset,
                                     const std::string& country,
                                     double train_fraction);

/// Accuracy of an existing model over the dataset (persistence check path).
ErrorMetrics evaluate_model(const CalibratedModel& model,
                            const CalibrationDataset& dataset);

struct EffectSizeRow {
  std::string group;
  double f_squared = 0.0;
};

/// Cohen's f-squared per regressor group, descending.
std::vector<EffectSizeRow> effect_sizes(const CalibratedModel& model,
                                        const CalibrationDataset& dataset);

}  // namespace heatrisk
