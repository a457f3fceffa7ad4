#include "heatrisk/risk.hpp"

#include <algorithm>
#include <cmath>

#include "heatrisk/errors.hpp"

namespace heatrisk {

namespace {

double sample_mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

double cvar_upper(std::span<const double> samples, double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw ConfigError("CVaR level must be in (0, 1]");
  }
  const auto n = samples.size();
  const auto k = static_cast<std::size_t>(
      std::ceil(alpha * static_cast<double>(n)));
  if (n == 0 || static_cast<double>(n) < std::ceil(1.0 / alpha)) {
    throw NumericError("CVaR at level " + std::to_string(alpha) + " needs >= " +
                       std::to_string(static_cast<std::size_t>(
                           std::ceil(1.0 / alpha))) +
                       " samples, got " + std::to_string(n));
  }
  std::vector<double> copy(samples.begin(), samples.end());
  std::nth_element(copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(k),
                   copy.end(), std::greater<double>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += copy[i];
  return s / static_cast<double>(k);
}

DensityCurve kde_density(std::span<const double> samples,
                         std::optional<double> bandwidth) {
  if (samples.size() < 2) {
    throw NumericError("kernel density needs at least 2 samples");
  }
  const double mean = sample_mean(samples);
  const double sd = sample_std(samples, mean);
  if (!(sd > 0.0)) {
    throw NumericError("kernel density undefined for zero-variance samples");
  }
  double h;
  if (bandwidth) {
    if (!(*bandwidth > 0.0)) throw ConfigError("KDE bandwidth must be positive");
    h = *bandwidth;
  } else {
    h = 1.06 * sd *
        std::pow(static_cast<double>(samples.size()), -0.2);  // Silverman
  }

  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it - 3.0 * h;
  const double hi = *hi_it + 3.0 * h;

  DensityCurve curve;
  curve.bandwidth = h;
  curve.grid.resize(kKdeGridPoints);
  curve.density.resize(kKdeGridPoints);
  const double step = (hi - lo) / static_cast<double>(kKdeGridPoints - 1);
  const double norm =
      1.0 / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * M_PI));
  for (int g = 0; g < kKdeGridPoints; ++g) {
    const double x = lo + step * g;
    double acc = 0.0;
    for (double s : samples) {
      const double u = (x - s) / h;
      acc += std::exp(-0.5 * u * u);
    }
    curve.grid[static_cast<std::size_t>(g)] = x;
    curve.density[static_cast<std::size_t>(g)] = norm * acc;
  }
  return curve;
}

DurationCurve load_duration(std::span<const double> series) {
  DurationCurve curve;
  curve.values.assign(series.begin(), series.end());
  std::sort(curve.values.begin(), curve.values.end(), std::greater<double>());
  return curve;
}

RiskSummary scenario_statistics(std::span<const double> values,
                                std::string metric_name, double alpha) {
  if (values.size() < static_cast<std::size_t>(kMinScenariosForCvar)) {
    throw NumericError("scenario statistics need >= 20 scenarios, got " +
                       std::to_string(values.size()));
  }
  RiskSummary summary;
  summary.metric = std::move(metric_name);
  summary.n_scenarios = static_cast<int>(values.size());
  summary.mean = sample_mean(values);
  summary.std_dev = sample_std(values, summary.mean);
  summary.cvar5 = cvar_upper(values, alpha);
  return summary;
}

RepresentativeCurves representative_duration_curves(
    std::span<const DurationCurve> curves, double alpha) {
  if (curves.size() < static_cast<std::size_t>(kMinScenariosForCvar)) {
    throw NumericError("representative curves need >= 20 scenarios, got " +
                       std::to_string(curves.size()));
  }
  const std::size_t ranks = curves.front().values.size();
  for (const auto& c : curves) {
    if (c.values.size() != ranks) {
      throw ContractError("duration curves have differing lengths");
    }
  }
  RepresentativeCurves out;
  out.mean.values.resize(ranks);
  out.one_in_twenty.values.resize(ranks);
  std::vector<double> column(curves.size());
  for (std::size_t r = 0; r < ranks; ++r) {
    for (std::size_t c = 0; c < curves.size(); ++c) {
      column[c] = curves[c].values[r];
    }
    out.mean.values[r] = sample_mean(column);
    out.one_in_twenty.values[r] = cvar_upper(column, alpha);
  }
  return out;
}

}  // namespace heatrisk
