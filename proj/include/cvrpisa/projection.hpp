#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvrpisa/features.hpp"
#include "cvrpisa/metadata.hpp"
#include "cvrpisa/prelim.hpp"

namespace cvrpisa {

enum class TransformKind { Identity, Prelim, MinMax };

const char* to_string(TransformKind kind);

// Linear 2D map over named, normalized features.
struct ProjectionModel {
  std::vector<std::string> feature_names;
  Eigen::Matrix<double, 2, Eigen::Dynamic> matrix;
  TransformKind transform = TransformKind::Identity;
  std::vector<ColumnTransform> prelim;  // per feature when transform == Prelim
  std::vector<double> min, max;         // per feature when transform == MinMax

  std::size_t dimension() const { return feature_names.size(); }
  // Throws Error if sizes disagree.
  void validate() const;
  Eigen::VectorXd normalize(const Eigen::VectorXd& raw) const;

  friend bool operator==(const ProjectionModel&, const ProjectionModel&) = default;
};

// The published 23-feature projection with an identity transform.
ProjectionModel builtin_paper_model();

// Model names absent from feature_catalog().
std::vector<std::string> unknown_feature_names(const ProjectionModel& model);

// Throws MissingFeature naming every absent model feature.
std::array<double, 2> project(const ProjectionModel& model, const FeatureVector& fv);
std::array<double, 2> project_values(const ProjectionModel& model, const Eigen::VectorXd& raw);

struct Exclusion {
  std::string instance;
  std::vector<std::string> missing;
};

struct BatchProjection {
  std::vector<std::string> instances;
  std::vector<std::string> sources;
  Eigen::MatrixXd z;  // rows align with instances
  std::vector<Exclusion> excluded;
};

// Projects every row holding all model features; other rows are reported.
// Model features absent from the table header are reported for every row.
BatchProjection project_batch(const ProjectionModel& model, const MetadataTable& table, std::size_t jobs = 1);

// Replaces the transform with PRELIM column transforms fitted on the complete
// rows of `reference`.
ProjectionModel with_fitted_transform(const ProjectionModel& model, const MetadataTable& reference,
                                      const PrelimConfig& cfg);

// JSON document: feature_names, 2 x d row-major matrix, transform block.
std::string model_to_json(const ProjectionModel& model);
ProjectionModel model_from_json(const std::string& text);
void save_model(const ProjectionModel& model, const std::filesystem::path& path);
ProjectionModel load_model(const std::filesystem::path& path);

// `Instances,Z1,Z2`.
std::string format_coordinates(const std::vector<std::string>& instances, const Eigen::MatrixXd& z);

}  // namespace cvrpisa
