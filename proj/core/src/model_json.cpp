#include "heatrisk/io/model_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "heatrisk/errors.hpp"

namespace heatrisk::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string model_to_json(const CalibratedModel& model) {
  json doc;
  doc["format"] = kModelFormatTag;
  doc["country"] = model.country;
  doc["schema"] = model.schema;
  doc["coefficients"] = std::vector<double>(
      model.coefficients.data(), model.coefficients.data() + model.coefficients.size());
  doc["std_errors"] = std::vector<double>(
      model.std_errors.data(), model.std_errors.data() + model.std_errors.size());
  doc["residual_variance"] = model.residual_variance;
  doc["r_squared"] = model.r_squared;
  doc["n_observations"] = model.n_observations;
  doc["trend_origin"] = format_iso_hour(model.trend_origin);
  return doc.dump(2) + "\n";
}

CalibratedModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("model JSON parse error: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kModelFormatTag) {
      throw DataError("unknown model format tag '" +
                      doc.at("format").get<std::string>() + "'");
    }
    CalibratedModel model;
    model.country = doc.at("country").get<std::string>();
    model.schema = doc.at("schema").get<std::vector<std::string>>();
    const auto coeffs = doc.at("coefficients").get<std::vector<double>>();
    const auto errs = doc.at("std_errors").get<std::vector<double>>();
    if (coeffs.size() != model.schema.size() || errs.size() != coeffs.size()) {
      throw DataError("model schema and coefficient lengths differ");
    }
    model.coefficients = Eigen::Map<const Eigen::VectorXd>(
        coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
    model.std_errors = Eigen::Map<const Eigen::VectorXd>(
        errs.data(), static_cast<Eigen::Index>(errs.size()));
    model.residual_variance = doc.at("residual_variance").get<double>();
    model.r_squared = doc.at("r_squared").get<double>();
    model.n_observations = doc.at("n_observations").get<std::int64_t>();
    model.trend_origin = parse_iso_hour(doc.at("trend_origin").get<std::string>());
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("model JSON field error: ") + e.what());
  }
}

void save_model(const fs::path& path, const CalibratedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << model_to_json(model);
  if (!out) throw DataError("write failed: " + path.string());
}

CalibratedModel load_model(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return model_from_json(buffer.str());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace heatrisk::io
