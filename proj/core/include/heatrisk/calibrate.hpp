#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heatrisk/calendar.hpp"
#include "heatrisk/features.hpp"

namespace heatrisk {

/// Relative pivot threshold below which a design-matrix column counts as
/// linearly dependent.
inline constexpr double kRankTolerance = 1e-10;

/// One country's fitted log-linear consumption model.
struct CalibratedModel {
  std::string country;
  std::vector<std::string> schema;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;      // classical OLS standard errors
  double residual_variance = 0.0;  // SSE / (n - p), ln scale
  double r_squared = 0.0;          // ln scale
  std::int64_t n_observations = 0;
  UtcHour trend_origin = 0;
};

struct ErrorMetrics {
  double rmse = 0.0;   // MWh
  double mae = 0.0;    // MWh
  double mape = 0.0;   // percent
  double smape = 0.0;  // percent
};

struct SplitCounts {
  std::size_t n_train = 0;
  std::size_t n_valid = 0;
};

/// Chronological split: the first round(fraction * n) rows train, the rest
/// validate. Warns when the validation part comes out empty.
SplitCounts split_train_valid(std::size_t n_rows, double fraction = 0.75);

/// Row window [first, first + count) of a feature matrix.
FeatureMatrix slice_rows(const FeatureMatrix& X, std::size_t first,
                         std::size_t count);

struct FitMeta {
  std::string country;
  UtcHour trend_origin = 0;
};

/// Ordinary least squares via column-pivoted Householder QR. `y` is
/// ln-consumption. Throws NumericError on rank deficiency, naming the
/// dependent columns.
CalibratedModel fit_ols(const FeatureMatrix& X, std::span<const double> y,
                        FitMeta meta = {});

/// Back-transformed prediction exp(X beta), MWh per hour.
std::vector<double> predict(const CalibratedModel& model,
                            const FeatureMatrix& X);

/// Error indices on the linear (MWh) scale. Actuals below 1 MWh are refused
/// (MAPE denominator guard).
ErrorMetrics accuracy(std::span<const double> predicted,
                      std::span<const double> actual);

/// Cohen's f-squared for a regressor group: (R2_full - R2_reduced) /
/// (1 - R2_full), with the reduced model refit without the group's columns.
/// R2_full is recomputed from `full_fit` on the given dataset.
double effect_size(const CalibratedModel& full_fit,
                   std::span<const std::string> group, const FeatureMatrix& X,
                   std::span<const double> y);

}  // namespace heatrisk
