#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatrisk/calibrate.hpp"

namespace heatrisk {

/// Electricity needed to replace 1 J of temperature-sensitive fossil heating
/// (heat pump / resistive mix at the assumed efficiencies).
inline constexpr double kDefaultReplacementFactor = 0.475;

inline constexpr double kHoursPerYear = 8760.0;

/// Fossil and electric heating energy of one country, TWh per year.
struct HeatingInventory {
  std::string country;
  double fossil_space_water_twh = 0.0;
  double fossil_district_twh = 0.0;
  double direct_electric_sw_twh = 0.0;
  double fossil_process_twh = 0.0;
};

/// Electrification level for one country: share 0 is business as usual,
/// 0.5 half, 1.0 full replacement of the 2012 fossil heating.
struct ScenarioSpec {
  std::string country;
  double share = 0.0;
  double hdh_multiplier = 1.0;  // 1 + share * implied sensitivity increase
  double baseload_twh = 0.0;    // share * fossil process heat
};

void validate(const HeatingInventory& inventory);

/// Electricity replacing the temperature-sensitive fossil heating:
/// factor * (space/water + district), TWh per year.
double replacement_electricity(const HeatingInventory& inventory,
                               double factor = kDefaultReplacementFactor);

/// Replacement electricity relative to today's direct electric space/water
/// heating. Fraction (0.174 means +17.4%).
double implied_sensitivity_increase(double replacement_twh,
                                    double direct_electric_sw_twh);

ScenarioSpec build_scenario(const HeatingInventory& inventory, double share,
                            double factor = kDefaultReplacementFactor);

/// Flat hourly rate of an annual energy amount: twh * 1e6 / 8760.
double twh_per_year_to_mwh_per_hour(double twh);

/// A calibrated model with its electrification modification applied: HDH
/// coefficients scaled, plus a flat baseload added after exponentiation.
struct ScenarioModel {
  CalibratedModel model;
  ScenarioSpec spec;
  double baseload_mwh = 0.0;  // per hour
};

/// Scales the five HDH coefficients by the spec's multiplier and attaches
/// the flat baseload. Warns when an HDH coefficient is negative.
ScenarioModel apply_electrification(const CalibratedModel& model,
                                    const ScenarioSpec& spec);

/// exp(X beta') + baseload, MWh per hour.
std::vector<double> predict_scenario(const ScenarioModel& scenario,
                                     const FeatureMatrix& X);

/// One row of the electrification table (inventory arithmetic for one
/// country at one share).
struct ScenarioTableRow {
  std::string country;
  double share = 0.0;
  double temp_sensitive_fossil_twh = 0.0;
  double replacement_twh = 0.0;
  double direct_electric_sw_twh = 0.0;
  double implied_increase = 0.0;      // fraction, share-independent
  double sensitivity_increase = 0.0;  // fraction, share-scaled
  double baseload_twh = 0.0;
};

std::vector<ScenarioTableRow> scenario_table(
    std::span<const HeatingInventory> inventories,
    std::span<const double> shares,
    double factor = kDefaultReplacementFactor);

}  // namespace heatrisk
