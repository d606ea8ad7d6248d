#pragma once

#include <span>
#include <vector>

#include "cvrpisa/instance.hpp"

namespace cvrpisa {

// Uniform min-max scaling into the unit square. Aspect ratio is preserved:
// both axes are divided by the larger of the two ranges.
struct UnitSquareTransform {
  double x0 = 0.0;
  double y0 = 0.0;
  double scale = 1.0;

  static UnitSquareTransform fit(std::span<const Point> pts);
  Point apply(const Point& p) const { return {(p.x - x0) / scale, (p.y - y0) / scale}; }
  std::vector<Point> apply(std::span<const Point> pts) const;
};

double euclid(const Point& a, const Point& b);

// z-component of (b - a) x (c - a); positive for a counter-clockwise turn.
double orient(const Point& a, const Point& b, const Point& c);

// Indices of strict hull vertices in counter-clockwise order (collinear
// boundary points are excluded). Fewer than three indices when degenerate.
std::vector<std::size_t> convex_hull(std::span<const Point> pts);

double polygon_area(std::span<const Point> pts, std::span<const std::size_t> ring);

double point_segment_distance(const Point& p, const Point& a, const Point& b);

// True iff the open segments ab and cd cross at a single interior point.
bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d);

}  // namespace cvrpisa
