#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library code they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "cvrpisa/instance.hpp"

namespace oracle {

using cvrpisa::DistanceMatrix;
using cvrpisa::Point;

struct Moments {
  long double min, max, mean, median, sd, var, skew, kurt;
};

// Two passes in long double: mean first, then central moments.
inline Moments two_pass(const std::vector<double>& x) {
  Moments m{};
  if (x.empty()) return m;
  std::vector<double> s = x;
  std::sort(s.begin(), s.end());
  const auto n = static_cast<long double>(x.size());
  m.min = s.front();
  m.max = s.back();
  m.median = s.size() % 2 ? s[s.size() / 2] : (static_cast<long double>(s[s.size() / 2 - 1]) + s[s.size() / 2]) / 2;
  long double sum = 0;
  for (double v : x) sum += v;
  m.mean = sum / n;
  long double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    const long double d = v - m.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  if (x.size() < 2 || m2 == 0) return m;
  m.var = m2 / (n - 1);
  m.sd = std::sqrt(m.var);
  m.skew = (m3 / n) / (m.sd * m.sd * m.sd);
  m.kurt = (m4 / n) / (m.var * m.var) - 3;
  return m;
}

// Minimum spanning tree weight by enumerating every labelled tree through
// its Pruefer sequence.
inline double mst_by_pruefer(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) return 0.0;
  if (n == 2) return d(0, 1);
  std::vector<std::size_t> seq(n - 2, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<std::size_t> degree(n, 1);
    for (auto v : seq) ++degree[v];
    double w = 0.0;
    for (auto v : seq) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      w += d(leaf, v);
      --degree[leaf];
      --degree[v];
    }
    std::size_t u = n, v = n;
    for (std::size_t i = 0; i < n; ++i)
      if (degree[i] == 1) (u == n ? u : v) = i;
    w += d(u, v);
    best = std::min(best, w);
    std::size_t k = 0;
    while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
    if (k == seq.size()) break;
  }
  return best;
}

inline double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Convex hull area in O(n^3): a directed pair (i, j) is a counter-clockwise
// hull edge when no point lies strictly to its right and no point on its line
// lies beyond j. Sums the shoelace terms of those edges over distinct points.
inline double hull_area_cubic(const std::vector<Point>& pts) {
  std::set<std::pair<double, double>> distinct;
  for (const auto& q : pts) distinct.insert({q.x, q.y});
  std::vector<Point> p;
  for (const auto& [x, y] : distinct) p.push_back({x, y});
  const std::size_t n = p.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool edge = true;
      for (std::size_t k = 0; k < n && edge; ++k) {
        if (k == i || k == j) continue;
        const double c = cross(p[i], p[j], p[k]);
        if (c < 0) edge = false;
        if (c == 0) {
          const double t = (p[k].x - p[i].x) * (p[j].x - p[i].x) + (p[k].y - p[i].y) * (p[j].y - p[i].y);
          const double len2 = (p[j].x - p[i].x) * (p[j].x - p[i].x) + (p[j].y - p[i].y) * (p[j].y - p[i].y);
          if (t < 0 || t > len2) edge = false;
        }
      }
      if (edge) twice += p[i].x * p[j].y - p[j].x * p[i].y;
    }
  }
  return std::abs(twice) / 2.0;
}

// Reachability closure by repeated relaxation.
inline std::vector<std::vector<bool>> closure(const std::vector<std::vector<std::size_t>>& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    r[i][i] = true;
    for (auto j : g[i]) r[i][j] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

inline std::size_t scc_count(const std::vector<std::vector<std::size_t>>& g) {
  const auto r = closure(g);
  std::set<std::vector<bool>> classes;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<bool> cls(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) cls[j] = r[i][j] && r[j][i];
    classes.insert(cls);
  }
  return classes.size();
}

inline std::size_t wcc_count(const std::vector<std::vector<std::size_t>>& g) {
  std::vector<std::vector<std::size_t>> u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto j : g[i]) {
      u[i].push_back(j);
      u[j].push_back(i);
    }
  return scc_count(u);
}

// Optimal tour cost over all permutations fixing node 0.
inline double tsp_optimum(const DistanceMatrix& d) {
  std::vector<std::size_t> perm(d.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) c += d(perm[i], perm[(i + 1) % perm.size()]);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

// Largest gain of any 2-opt exchange on a tour; <= 0 means 2-opt optimal.
inline double best_two_opt_gain(const DistanceMatrix& d, const std::vector<std::size_t>& t) {
  const std::size_t n = t.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const auto a = t[i], b = t[i + 1], c = t[j], e = t[(j + 1) % n];
      best = std::max(best, d(a, b) + d(c, e) - d(a, c) - d(b, e));
    }
  return best;
}

// DBSCAN semantics checked directly: core points, density-connected core
// components, and points reachable from no core point.
struct DensityStructure {
  std::vector<bool> core;
  std::vector<int> core_component;  // -1 for non-core
  std::size_t components = 0;
  std::vector<bool> noise;
};

inline DensityStructure density_structure(const std::vector<Point>& p, double eps, std::size_t min_pts) {
  const std::size_t n = p.size();
  auto near = [&](std::size_t i, std::size_t j) { return std::hypot(p[i].x - p[j].x, p[i].y - p[j].y) <= eps; };
  DensityStructure s;
  s.core.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) c += near(i, j) ? 1 : 0;
    s.core[i] = c >= min_pts;
  }
  std::vector<std::vector<std::size_t>> g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && s.core[i] && s.core[j] && near(i, j)) g[i].push_back(j);
  const auto r = closure(g);
  s.core_component.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.core[i] || s.core_component[i] >= 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (s.core[j] && r[i][j]) s.core_component[j] = static_cast<int>(s.components);
    ++s.components;
  }
  s.noise.assign(n, true);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s.core[j] && near(i, j)) s.noise[i] = false;
  return s;
}

// Primal integral by midpoint sampling of the incumbent step function.
inline double pi_fine_grid(const std::vector<std::pair<double, double>>& pts, double T, double bks,
                           std::size_t cells) {
  auto gap = [&](double v) {
    if (v == 0 && bks == 0) return 0.0;
    if (v * bks < 0) return 1.0;
    return std::min(1.0, std::abs(v - bks) / std::max(std::abs(v), std::abs(bks)));
  };
  const double h = T / static_cast<double>(cells);
  double acc = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double t = (static_cast<double>(c) + 0.5) * h;
    double g = 1.0;
    for (const auto& [ti, vi] : pts)
      if (ti <= t) g = gap(vi);
    acc += g * h;
  }
  return acc / T;
}

}  // namespace oracle
