#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvrpisa/kmeans.hpp"
#include "cvrpisa/performance.hpp"
#include "cvrpisa/random_forest.hpp"

namespace cvrpisa {

struct CorrelationFilter {
  Eigen::MatrixXd correlation;          // features x algorithms
  std::vector<std::size_t> surviving;   // ascending column indices
  bool padded = false;                  // true when min_keep forced extra columns in
};

// A feature survives iff max over algorithms of |Pearson| > threshold. When
// fewer than `min_keep` survive, the strongest remaining ones are added.
CorrelationFilter correlation_filter(const Eigen::MatrixXd& features, const Eigen::MatrixXd& performance,
                                     double threshold = 0.5, std::size_t min_keep = 0);

// K-means of the feature columns under the 1 - |rho| geometry. Requires
// 1 <= k <= features.cols().
Clustering cluster_features(const Eigen::MatrixXd& features, std::size_t k, std::uint64_t seed);

// Clustering quality for every k in [k_lo, k_hi] (clipped to [2, cols - 1]).
std::vector<ClusterQuality> k_sweep(const Eigen::MatrixXd& features, std::size_t k_lo, std::size_t k_hi,
                                    std::uint64_t seed);

// Two leading principal-component scores of the standardized columns.
// Throws IllConditioned when the rank is below 2.
Eigen::MatrixXd pca_scores(const Eigen::MatrixXd& x);

struct CandidateScore {
  std::vector<std::size_t> features;  // column indices, one per cluster, in cluster order
  double mean_oob = 1.0;
  std::vector<double> oob;            // per algorithm
  bool degenerate = false;
};

struct SelectionConfig {
  std::size_t budget = 10000;
  ForestParams forest;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct Selection {
  std::vector<std::size_t> chosen;
  double mean_oob = 1.0;
  std::vector<double> oob;
  bool exhaustive = true;
  std::vector<CandidateScore> evaluated;  // in evaluation order
};

// Mean OOB error of per-algorithm forests on the PCA scores of `candidate`.
CandidateScore score_candidate(const Eigen::MatrixXd& features, const LabelMatrix& good,
                               const std::vector<std::size_t>& candidate, const SelectionConfig& cfg);

// Picks one feature per cluster minimizing mean OOB error. Exhaustive when
// the number of combinations fits the budget; otherwise a seeded sample of
// half the budget followed by greedy per-cluster improvement.
Selection select_combination(const Eigen::MatrixXd& features, const LabelMatrix& good, const Clustering& clusters,
                             const SelectionConfig& cfg);

}  // namespace cvrpisa
