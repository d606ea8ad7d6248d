#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace cvrpisa {

// Columns of the result are the columns of `x` centred and scaled to unit
// norm, so the dot product of two columns is their Pearson correlation.
// Constant columns map to zero vectors.
Eigen::MatrixXd correlation_embedding(const Eigen::MatrixXd& x);

// Squared distance between a point and a centroid up to sign:
// min over s in {+1, -1} of |e - s c|^2. For unit vectors this is 2 (1 - |rho|).
double aligned_sq_distance(const Eigen::VectorXd& e, const Eigen::VectorXd& c);

struct Clustering {
  std::size_t k = 0;
  std::vector<std::size_t> assignment;  // one entry per column, values in [0, k)
  Eigen::MatrixXd centroids;            // dim x k
  double inertia = 0.0;
};

// K-means on the columns of `points` under aligned_sq_distance. Each member
// is sign-aligned with its centroid before averaging. k-means++ seeding,
// best of `n_init` runs.
Clustering sign_aligned_kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                               std::size_t n_init = 10, std::size_t max_iter = 300);

struct ClusterQuality {
  std::size_t k = 0;
  double silhouette = 0.0;         // higher is better
  double davies_bouldin = 0.0;     // lower is better
  double calinski_harabasz = 0.0;  // higher is better
};

// Validity indices over aligned Euclidean distances.
ClusterQuality cluster_quality(const Eigen::MatrixXd& points, const Clustering& c);

}  // namespace cvrpisa
