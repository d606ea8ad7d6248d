#include "cvrpisa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cvrpisa {

UnitSquareTransform UnitSquareTransform::fit(std::span<const Point> pts) {
  UnitSquareTransform t;
  if (pts.empty()) return t;
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  t.x0 = xmin;
  t.y0 = ymin;
  t.scale = std::max(xmax - xmin, ymax - ymin);
  if (!(t.scale > 0.0)) t.scale = 1.0;
  return t;
}

std::vector<Point> UnitSquareTransform::apply(std::span<const Point> pts) const {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(apply(p));
  return out;
}

double euclid(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double orient(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

std::vector<std::size_t> convex_hull(std::span<const Point> pts) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && (pts[a].y < pts[b].y || (pts[a].y == pts[b].y && a < b)));
  });
  idx.erase(std::unique(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] == pts[b]; }),
            idx.end());
  if (idx.size() < 3) return idx;

  // Andrew's monotone chain.
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0.0) --k;
    hull[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0.0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(std::span<const Point> pts, std::span<const std::size_t> ring) {
  if (ring.size() < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& a = pts[ring[i]];
    const auto& b = pts[ring[(i + 1) % ring.size()]];
    acc += a.x * b.y - b.x * a.y;
  }
  return std::abs(acc) / 2.0;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  if (len2 == 0.0) return euclid(p, a);
  const double t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  return euclid(p, Point{a.x + t * vx, a.y + t * vy});
}

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) &&
         ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0));
}

}  // namespace cvrpisa
