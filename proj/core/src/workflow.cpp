#include "heatrisk/workflow.hpp"

#include <algorithm>
#include <cmath>

#include "heatrisk/errors.hpp"

namespace heatrisk {

CountryInputs load_country_inputs(const io::CountryConfig& config) {
  return CountryInputs{config.id,
                       io::load_consumption_csv(config.consumption_csv).series,
                       io::load_weather_csv(config.weather_csv),
                       io::load_holidays_csv(config.holidays_csv),
                       io::load_macro_csv(config.macro_csv)};
}

CalibrationDataset build_calibration_dataset(const CountryInputs& inputs) {
  std::vector<const HourlySeries*> aligned{&inputs.consumption};
  for (const auto& st : inputs.stations) aligned.push_back(&st.series);
  HourRange range = common_range(aligned);
  range.from = std::max(range.from, inputs.macro.first_anchor());
  range.to = std::min(range.to, inputs.macro.last_anchor() + 1);
  if (range.size() <= static_cast<std::size_t>(kFeatureCount)) {
    throw DataError("country '" + inputs.id +
                    "': consumption, weather and macro data share too few "
                    "hours to calibrate");
  }

  CalibrationDataset ds;
  ds.trend_origin = range.from;
  ds.grid = CalendarGrid::contiguous(range.from, range.size());

  std::vector<std::vector<double>> temps;
  for (const auto& st : inputs.stations) {
    temps.push_back(st.series.slice(range.from, range.to).values);
  }
  std::vector<double> gdp(range.size()), pop(range.size());
  for (std::size_t i = 0; i < range.size(); ++i) {
    const UtcHour t = range.from + static_cast<std::int64_t>(i);
    gdp[i] = inputs.macro.gdp_at(t);
    pop[i] = inputs.macro.pop_at(t);
  }
  ds.X = build_design_matrix(ds.grid, temps, gdp, pop, inputs.holidays,
                             ds.trend_origin);

  const HourlySeries cons = inputs.consumption.slice(range.from, range.to);
  ds.consumption = cons.values;
  ds.y.resize(cons.size());
  for (std::size_t i = 0; i < cons.size(); ++i) {
    if (!(cons.values[i] > 0.0)) {
      throw DataError("country '" + inputs.id +
                      "': consumption must be positive for the log model");
    }
    ds.y[i] = std::log(cons.values[i]);
  }
  return ds;
}

CountryCalibration calibrate_country(const CalibrationDataset& dataset,
                                     const std::string& country,
                                     double train_fraction) {
  const SplitCounts split =
      split_train_valid(dataset.y.size(), train_fraction);
  const FitMeta meta{country, dataset.trend_origin};

  CountryCalibration out;
  const FeatureMatrix x_train = slice_rows(dataset.X, 0, split.n_train);
  const std::span<const double> y_train(dataset.y.data(), split.n_train);
  const CalibratedModel train_fit = fit_ols(x_train, y_train, meta);
  out.accuracy.push_back(
      {"train", split.n_train,
       accuracy(predict(train_fit, x_train),
                std::span<const double>(dataset.consumption.data(),
                                        split.n_train))});
  if (split.n_valid > 0) {
    const FeatureMatrix x_valid =
        slice_rows(dataset.X, split.n_train, split.n_valid);
    out.accuracy.push_back(
        {"valid", split.n_valid,
         accuracy(predict(train_fit, x_valid),
                  std::span<const double>(
                      dataset.consumption.data() + split.n_train,
                      split.n_valid))});
  }

  out.model = fit_ols(dataset.X, dataset.y, meta);
  out.accuracy.push_back(
      {"full", dataset.y.size(),
       accuracy(predict(out.model, dataset.X), dataset.consumption)});
  return out;
}

ErrorMetrics evaluate_model(const CalibratedModel& model,
                            const CalibrationDataset& dataset) {
  return accuracy(predict(model, dataset.X), dataset.consumption);
}

std::vector<EffectSizeRow> effect_sizes(const CalibratedModel& model,
                                        const CalibrationDataset& dataset) {
  std::vector<EffectSizeRow> rows;
  for (const auto& group : feature_groups()) {
    rows.push_back({group.name,
                    effect_size(model, group.columns, dataset.X, dataset.y)});
  }
  std::sort(rows.begin(), rows.end(),
            [](const EffectSizeRow& a, const EffectSizeRow& b) {
              return a.f_squared != b.f_squared ? a.f_squared > b.f_squared
                                                : a.group < b.group;
            });
  return rows;
}

}  // namespace heatrisk
