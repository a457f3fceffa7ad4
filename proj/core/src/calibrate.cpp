#include "heatrisk/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "heatrisk/errors.hpp"
#include "heatrisk/notices.hpp"

namespace heatrisk {

SplitCounts split_train_valid(std::size_t n_rows, double fraction) {
  if (n_rows == 0) throw DataError("cannot split an empty dataset");
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ConfigError("split fraction must be in (0, 1]");
  }
  auto n_train = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n_rows)));
  n_train = std::min(n_train, n_rows);
  if (n_train == n_rows) {
    emit_warning("train/valid split leaves an empty validation sample");
  }
  if (n_train == 0) {
    emit_warning("train/valid split leaves an empty training sample");
  }
  return SplitCounts{n_train, n_rows - n_train};
}

FeatureMatrix slice_rows(const FeatureMatrix& X, std::size_t first,
                         std::size_t count) {
  if (first + count > static_cast<std::size_t>(X.rows())) {
    throw ContractError("row slice outside feature matrix");
  }
  FeatureMatrix out;
  out.schema = X.schema;
  out.values = X.values.middleRows(static_cast<Eigen::Index>(first),
                                   static_cast<Eigen::Index>(count));
  return out;
}

CalibratedModel fit_ols(const FeatureMatrix& X, std::span<const double> y,
                        FitMeta meta) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (static_cast<std::size_t>(n) != y.size()) {
    throw ContractError("design matrix and target length differ");
  }
  if (n <= p) {
    throw NumericError("need more observations than regressors (" +
                       std::to_string(n) + " rows, " + std::to_string(p) +
                       " columns)");
  }

  Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.values);
  qr.setThreshold(kRankTolerance);
  const Eigen::Index rank = qr.rank();
  if (rank < p) {
    // The pivoting pushes dependent columns to the back of the permutation.
    std::vector<std::string> dependent;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = rank; k < p; ++k) {
      const auto col = static_cast<std::size_t>(perm[k]);
      dependent.push_back(col < X.schema.size() ? X.schema[col]
                                                : std::to_string(col));
    }
    std::sort(dependent.begin(), dependent.end());
    std::string names;
    for (const auto& d : dependent) {
      if (!names.empty()) names += ", ";
      names += d;
    }
    throw NumericError("design matrix is rank deficient (rank " +
                       std::to_string(rank) + " of " + std::to_string(p) +
                       "); dependent columns: " + names);
  }

  CalibratedModel model;
  model.country = meta.country;
  model.trend_origin = meta.trend_origin;
  model.schema = X.schema;
  model.n_observations = n;
  model.coefficients = qr.solve(yv);

  const Eigen::VectorXd residuals = yv - X.values * model.coefficients;
  const double sse = residuals.squaredNorm();
  model.residual_variance = sse / static_cast<double>(n - p);

  const double mean = yv.mean();
  const double sst = (yv.array() - mean).square().sum();
  model.r_squared = sst > 0.0 ? 1.0 - sse / sst : 0.0;

  // (X'X)^-1 = P R^-1 R^-T P' from the pivoted factorization X P = Q R.
  const Eigen::MatrixXd r =
      qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd cov_perm = r_inv * r_inv.transpose();
  const Eigen::MatrixXd cov =
      qr.colsPermutation() * cov_perm * qr.colsPermutation().transpose();
  model.std_errors =
      (model.residual_variance * cov.diagonal().array()).sqrt().matrix();

  return model;
}

std::vector<double> predict(const CalibratedModel& model,
                            const FeatureMatrix& X) {
  if (X.schema != model.schema) {
    throw ContractError("feature schema does not match model schema");
  }
  const Eigen::VectorXd log_pred = X.values * model.coefficients;
  std::vector<double> out(static_cast<std::size_t>(log_pred.size()));
  for (Eigen::Index i = 0; i < log_pred.size(); ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(log_pred[i]);
  }
  return out;
}

ErrorMetrics accuracy(std::span<const double> predicted,
                      std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw ContractError("predicted/actual length mismatch");
  }
  if (predicted.empty()) throw ContractError("accuracy needs at least one hour");

  double sq_sum = 0.0, abs_sum = 0.0, ape_sum = 0.0, sape_sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] < 1.0) {
      throw DataError("actual consumption below 1 MWh at index " +
                      std::to_string(i) + "; percentage errors undefined");
    }
    const double err = predicted[i] - actual[i];
    sq_sum += err * err;
    abs_sum += std::abs(err);
    ape_sum += std::abs(err) / actual[i];
    sape_sum += std::abs(err) / ((std::abs(predicted[i]) + std::abs(actual[i])) / 2.0);
  }
  const auto n = static_cast<double>(actual.size());
  return ErrorMetrics{std::sqrt(sq_sum / n), abs_sum / n, 100.0 * ape_sum / n,
                      100.0 * sape_sum / n};
}

double effect_size(const CalibratedModel& full_fit,
                   std::span<const std::string> group, const FeatureMatrix& X,
                   std::span<const double> y) {
  if (group.empty()) throw ContractError("effect size group is empty");
  if (X.schema != full_fit.schema) {
    throw ContractError("dataset schema does not match model schema");
  }
  std::vector<Eigen::Index> drop;
  for (const auto& name : group) {
    const auto it = std::find(X.schema.begin(), X.schema.end(), name);
    if (it == X.schema.end()) {
      throw ContractError("group column '" + name + "' not in schema");
    }
    drop.push_back(it - X.schema.begin());
  }
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());

  const Eigen::Index n = X.rows();
  if (static_cast<std::size_t>(n) != y.size()) {
    throw ContractError("dataset target length mismatch");
  }
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  const double mean = yv.mean();
  const double sst = (yv.array() - mean).square().sum();
  if (!(sst > 0.0)) throw NumericError("target has zero variance");

  const double sse_full =
      (yv - X.values * full_fit.coefficients).squaredNorm();
  const double r2_full = 1.0 - sse_full / sst;
  if (1.0 - r2_full < 1e-15) {
    throw NumericError("full model fits exactly; f-squared undefined");
  }

  FeatureMatrix reduced;
  reduced.values.resize(n, X.cols() - static_cast<Eigen::Index>(drop.size()));
  Eigen::Index out_col = 0;
  std::size_t next_drop = 0;
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    if (next_drop < drop.size() && drop[next_drop] == c) {
      ++next_drop;
      continue;
    }
    reduced.values.col(out_col++) = X.values.col(c);
    reduced.schema.push_back(X.schema[static_cast<std::size_t>(c)]);
  }

  const CalibratedModel reduced_fit = fit_ols(reduced, y);
  const double sse_reduced =
      (yv - reduced.values * reduced_fit.coefficients).squaredNorm();
  const double r2_reduced = 1.0 - sse_reduced / sst;

  const double f2 = (r2_full - r2_reduced) / (1.0 - r2_full);
  return f2 > 0.0 ? f2 : 0.0;
}

}  // namespace heatrisk
