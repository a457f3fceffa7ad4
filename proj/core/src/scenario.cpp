#include "heatrisk/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "heatrisk/errors.hpp"
#include "heatrisk/notices.hpp"

namespace heatrisk {

void validate(const HeatingInventory& inventory) {
  const double fields[] = {
      inventory.fossil_space_water_twh, inventory.fossil_district_twh,
      inventory.direct_electric_sw_twh, inventory.fossil_process_twh};
  for (double f : fields) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw DataError("heating inventory for '" + inventory.country +
                      "' has a negative or non-finite entry");
    }
  }
}

double replacement_electricity(const HeatingInventory& inventory,
                               double factor) {
  validate(inventory);
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw ConfigError("replacement factor must be positive");
  }
  return factor *
         (inventory.fossil_space_water_twh + inventory.fossil_district_twh);
}

double implied_sensitivity_increase(double replacement_twh,
                                    double direct_electric_sw_twh) {
  if (!(direct_electric_sw_twh > 0.0)) {
    throw DataError(
        "direct electric space/water heating must be positive; sensitivity "
        "increase undefined");
  }
  if (!(replacement_twh >= 0.0)) {
    throw DataError("replacement electricity must be non-negative");
  }
  return replacement_twh / direct_electric_sw_twh;
}

ScenarioSpec build_scenario(const HeatingInventory& inventory, double share,
                            double factor) {
  if (!(share >= 0.0) || !(share <= 1.0)) {
    throw ConfigError("electrification share must be in [0, 1], got " +
                      std::to_string(share));
  }
  const double replacement = replacement_electricity(inventory, factor);
  const double implied =
      implied_sensitivity_increase(replacement, inventory.direct_electric_sw_twh);
  ScenarioSpec spec;
  spec.country = inventory.country;
  spec.share = share;
  spec.hdh_multiplier = 1.0 + share * implied;
  spec.baseload_twh = share * inventory.fossil_process_twh;
  return spec;
}

double twh_per_year_to_mwh_per_hour(double twh) {
  return twh * 1e6 / kHoursPerYear;
}

ScenarioModel apply_electrification(const CalibratedModel& model,
                                    const ScenarioSpec& spec) {
  ScenarioModel out;
  out.model = model;
  out.spec = spec;
  out.baseload_mwh = twh_per_year_to_mwh_per_hour(spec.baseload_twh);

  char name[8];
  for (int i = 1; i <= kStationCount; ++i) {
    std::snprintf(name, sizeof name, "hdh_%d", i);
    const auto it = std::find(model.schema.begin(), model.schema.end(), name);
    if (it == model.schema.end()) {
      throw ContractError("model schema is missing column '" +
                          std::string(name) + "'");
    }
    const auto col = it - model.schema.begin();
    if (model.coefficients[col] < 0.0) {
      emit_warning("HDH coefficient " + std::string(name) + " of " +
                   model.country +
                   " is negative; electrification scaling will reduce "
                   "heating sensitivity");
    }
    out.model.coefficients[col] = model.coefficients[col] * spec.hdh_multiplier;
  }
  return out;
}

std::vector<double> predict_scenario(const ScenarioModel& scenario,
                                     const FeatureMatrix& X) {
  std::vector<double> out = predict(scenario.model, X);
  if (scenario.baseload_mwh != 0.0) {
    for (double& v : out) v += scenario.baseload_mwh;
  }
  return out;
}

std::vector<ScenarioTableRow> scenario_table(
    std::span<const HeatingInventory> inventories,
    std::span<const double> shares, double factor) {
  std::vector<ScenarioTableRow> rows;
  rows.reserve(inventories.size() * shares.size());
  for (const auto& inv : inventories) {
    const double replacement = replacement_electricity(inv, factor);
    const double implied =
        implied_sensitivity_increase(replacement, inv.direct_electric_sw_twh);
    for (double share : shares) {
      const ScenarioSpec spec = build_scenario(inv, share, factor);
      ScenarioTableRow row;
      row.country = inv.country;
      row.share = share;
      row.temp_sensitive_fossil_twh =
          inv.fossil_space_water_twh + inv.fossil_district_twh;
      row.replacement_twh = replacement;
      row.direct_electric_sw_twh = inv.direct_electric_sw_twh;
      row.implied_increase = implied;
      row.sensitivity_increase = spec.hdh_multiplier - 1.0;
      row.baseload_twh = spec.baseload_twh;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace heatrisk
