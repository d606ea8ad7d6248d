#pragma once

#include <span>
#include <vector>

#include "cvrpisa/instance.hpp"

namespace cvrpisa {

struct DbscanParams {
  double eps = 0.1;
  std::size_t min_pts = 3;
};

struct DbscanResult {
  // Cluster id per point, or kNoise.
  std::vector<int> labels;
  int cluster_count = 0;
  static constexpr int kNoise = -1;
};

// A point is core when its closed eps-ball (itself included) holds at least
// min_pts points. Cluster ids follow the order of the first core point found.
DbscanResult dbscan(std::span<const Point> pts, const DbscanParams& params);

}  // namespace cvrpisa
