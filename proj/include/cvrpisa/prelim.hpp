#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvrpisa/performance.hpp"

namespace cvrpisa {

struct PrelimConfig {
  double epsilon = 0.15;
  bool maximize = false;
  // Clamp columns to median +- 5 IQR.
  bool bound = false;
  // Data already normalized; skip the power transform and standardization.
  bool normalized = false;
  // Same effect as `normalized`, set when the input was scaled upstream.
  bool prenormalized = false;

  bool transform_enabled() const { return !normalized && !prenormalized; }
};

// Per-column map fitted on training data and reusable on unseen values:
// optional clamp, then optional Box-Cox of (x - shift) followed by z-scoring.
struct ColumnTransform {
  bool clamp = false;
  double lo = 0.0;
  double hi = 0.0;
  bool power = false;
  double shift = 0.0;
  double lambda = 1.0;
  double mean = 0.0;
  double sd = 1.0;

  double apply(double x) const;
  friend bool operator==(const ColumnTransform&, const ColumnTransform&) = default;
};

double box_cox(double x, double lambda);

// Maximum-likelihood Box-Cox exponent for strictly positive data.
double box_cox_lambda(const Eigen::VectorXd& positive);

// Fits a transform on one column and returns it; `values` must be finite.
ColumnTransform fit_column_transform(const Eigen::VectorXd& values, const PrelimConfig& cfg);

struct PrelimResult {
  Eigen::MatrixXd features;     // transformed, constant columns removed
  Eigen::MatrixXd performance;  // transformed
  LabelMatrix good;             // from the raw performance
  std::vector<std::size_t> kept_features;  // indices into the input columns
  std::vector<ColumnTransform> feature_transforms;  // aligned with kept_features
  std::vector<ColumnTransform> performance_transforms;
  std::vector<std::string> warnings;
};

// Inputs must be complete (no NaN). Constant feature columns are dropped
// with a warning.
PrelimResult prelim(const Eigen::MatrixXd& features, const Eigen::MatrixXd& performance,
                    const PrelimConfig& cfg, const std::vector<std::string>& feature_names = {});

}  // namespace cvrpisa
