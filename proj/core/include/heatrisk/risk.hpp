#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heatrisk {

inline constexpr double kCvarAlpha = 0.05;
inline constexpr int kMinScenariosForCvar = 20;
inline constexpr int kKdeGridPoints = 512;

/// Upper-tail conditional value-at-risk: the mean of the ceil(alpha * n)
/// largest samples. High outcomes are the risk here (cold-year consumption),
/// so the tail is taken from above.
double cvar_upper(std::span<const double> samples, double alpha = kCvarAlpha);

struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

/// Gaussian kernel density on a 512-point grid spanning
/// [min - 3h, max + 3h]. Default bandwidth is Silverman's rule
/// 1.06 * sd * n^(-1/5).
DensityCurve kde_density(std::span<const double> samples,
                         std::optional<double> bandwidth = std::nullopt);

/// Hourly loads of one year sorted descending; value at rank r is the load
/// reached or exceeded for r+1 hours.
struct DurationCurve {
  std::vector<double> values;
};

DurationCurve load_duration(std::span<const double> series);

struct RiskSummary {
  std::string metric;
  double mean = 0.0;
  double std_dev = 0.0;  // sample, n-1
  double cvar5 = 0.0;    // upper tail
  int n_scenarios = 0;
};

/// Distribution summary of one annual metric across weather scenarios.
/// Refuses the CVaR below 20 scenarios.
RiskSummary scenario_statistics(std::span<const double> values,
                                std::string metric_name,
                                double alpha = kCvarAlpha);

struct RepresentativeCurves {
  DurationCurve mean;           // rank-wise mean
  DurationCurve one_in_twenty;  // rank-wise upper-tail CVaR
};

RepresentativeCurves representative_duration_curves(
    std::span<const DurationCurve> curves, double alpha = kCvarAlpha);

}  // namespace heatrisk
