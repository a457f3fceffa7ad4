#pragma once

#include <filesystem>
#include <string>

#include "heatrisk/calibrate.hpp"

namespace heatrisk::io {

/// Schema-stamped JSON document for one calibrated model. Field names are
/// part of the on-disk contract:
///   format, country, schema, coefficients, std_errors,
///   residual_variance, r_squared, n_observations, trend_origin
inline constexpr const char* kModelFormatTag = "heatrisk-model/1";

std::string model_to_json(const CalibratedModel& model);
CalibratedModel model_from_json(const std::string& text);

void save_model(const std::filesystem::path& path,
                const CalibratedModel& model);
CalibratedModel load_model(const std::filesystem::path& path);

}  // namespace heatrisk::io
