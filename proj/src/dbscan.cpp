#include "cvrpisa/dbscan.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace cvrpisa {

namespace {

class GridIndex {
 public:
  GridIndex(std::span<const Point> pts, double cell) : pts_(pts), cell_(cell) {
    for (std::size_t i = 0; i < pts.size(); ++i) cells_[key(cell_of(pts[i].x), cell_of(pts[i].y))].push_back(i);
  }

  void neighbors(std::size_t i, double eps, std::vector<std::size_t>& out) const {
    out.clear();
    const auto cx = cell_of(pts_[i].x);
    const auto cy = cell_of(pts_[i].y);
    const double eps2 = eps * eps;
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (std::size_t j : it->second) {
          const double ddx = pts_[i].x - pts_[j].x;
          const double ddy = pts_[i].y - pts_[j].y;
          if (ddx * ddx + ddy * ddy <= eps2) out.push_back(j);
        }
      }
    }
  }

 private:
  std::int64_t cell_of(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
  static std::uint64_t key(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
  }

  std::span<const Point> pts_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace

DbscanResult dbscan(std::span<const Point> pts, const DbscanParams& params) {
  constexpr int kUnvisited = -2;
  DbscanResult res;
  res.labels.assign(pts.size(), kUnvisited);
  if (pts.empty() || !(params.eps > 0.0)) {
    res.labels.assign(pts.size(), DbscanResult::kNoise);
    return res;
  }
  GridIndex grid(pts, params.eps);
  std::vector<std::size_t> nbrs;
  std::vector<std::size_t> frontier;

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (res.labels[i] != kUnvisited) continue;
    grid.neighbors(i, params.eps, nbrs);
    if (nbrs.size() < params.min_pts) {
      res.labels[i] = DbscanResult::kNoise;
      continue;
    }
    const int id = res.cluster_count++;
    res.labels[i] = id;
    frontier.assign(nbrs.begin(), nbrs.end());
    while (!frontier.empty()) {
      const std::size_t j = frontier.back();
      frontier.pop_back();
      if (res.labels[j] == DbscanResult::kNoise) res.labels[j] = id;  // border point
      if (res.labels[j] != kUnvisited) continue;
      res.labels[j] = id;
      grid.neighbors(j, params.eps, nbrs);
      if (nbrs.size() >= params.min_pts) frontier.insert(frontier.end(), nbrs.begin(), nbrs.end());
    }
  }
  return res;
}

}  // namespace cvrpisa
