#include "cvrpisa/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "cvrpisa/error.hpp"
#include "cvrpisa/geometry.hpp"
#include "cvrpisa/graph.hpp"
#include "cvrpisa/random.hpp"

namespace cvrpisa {

namespace {

enum class Kind { Summary, Scalar, Quartiles, Position };
enum class Unit { None, Length, Area };

struct Item {
  const char* id;
  Kind kind;
  Unit unit;
  bool needs_coords;
};

// clang-format off
constexpr Item kItems[] = {
    {"ND1", Kind::Summary, Unit::Length, false},
    {"ND2", Kind::Scalar, Unit::Length, false},
    {"ND3", Kind::Scalar, Unit::None, false},
    {"ND4", Kind::Position, Unit::Length, true},
    {"ND5", Kind::Summary, Unit::Length, true},
    {"ND6", Kind::Scalar, Unit::None, true},
    {"ND7", Kind::Summary, Unit::None, true},
    {"ND8", Kind::Summary, Unit::Length, true},
    {"ND9", Kind::Scalar, Unit::None, true},
    {"MST1", Kind::Summary, Unit::Length, false},
    {"MST1_total", Kind::Scalar, Unit::Length, false},
    {"MST2", Kind::Summary, Unit::None, false},
    {"MST3", Kind::Summary, Unit::None, false},
    {"P1", Kind::Summary, Unit::None, false},
    {"P2", Kind::Quartiles, Unit::Length, false},
    {"P3", Kind::Summary, Unit::Length, false},
    {"P4", Kind::Summary, Unit::None, false},
    {"P5", Kind::Summary, Unit::Length, false},
    {"P6", Kind::Summary, Unit::Length, false},
    {"P7", Kind::Summary, Unit::Length, false},
    {"P8", Kind::Summary, Unit::None, true},
    {"P9", Kind::Summary, Unit::Length, false},
    {"P10", Kind::Summary, Unit::None, false},
    {"P11", Kind::Summary, Unit::None, false},
    {"G1", Kind::Scalar, Unit::Area, true},
    {"G2", Kind::Scalar, Unit::Area, true},
    {"G3", Kind::Scalar, Unit::None, true},
    {"G4", Kind::Summary, Unit::Length, true},
    {"G5", Kind::Summary, Unit::Length, true},
    {"NN1", Kind::Summary, Unit::Length, false},
    {"NN2", Kind::Summary, Unit::None, false},
    {"NN3", Kind::Summary, Unit::None, false},
    {"NN4", Kind::Summary, Unit::None, false},
    {"NN5", Kind::Summary, Unit::None, false},
    {"NN6", Kind::Summary, Unit::None, false},
    {"NN7", Kind::Summary, Unit::None, false},
    {"NN8", Kind::Summary, Unit::None, true},
    {"VRP1", Kind::Scalar, Unit::Length, true},
    {"VRP2", Kind::Summary, Unit::Length, false},
    {"VRP3", Kind::Summary, Unit::None, false},
    {"VRP4", Kind::Scalar, Unit::None, false},
    {"VRP5", Kind::Scalar, Unit::None, false},
};
// clang-format on

constexpr const char* kStatNames[] = {"min", "max", "mean", "median", "sd", "var", "skew", "kurt"};
constexpr const char* kQuartileNames[] = {"q1", "q2", "q3", "q4", "mean"};

const Item& item(std::string_view id) {
  for (const auto& it : kItems)
    if (id == it.id) return it;
  throw std::logic_error("unknown feature item " + std::string(id));
}

std::vector<std::string> base_names(const Item& it) {
  std::vector<std::string> out;
  const std::string id = it.id;
  switch (it.kind) {
    case Kind::Summary:
      for (auto s : kStatNames) out.push_back(id + "_" + s);
      break;
    case Kind::Scalar:
      out.push_back(id);
      break;
    case Kind::Quartiles:
      for (auto s : kQuartileNames) out.push_back(id + "_" + s);
      break;
    case Kind::Position:
      out.push_back(id + "_x");
      out.push_back(id + "_y");
      break;
  }
  return out;
}

std::vector<std::string> item_names(const Item& it) {
  auto out = base_names(it);
  if (it.unit != Unit::None) {
    const auto base = out;
    for (const auto& b : base) out.push_back(b + "_raw");
  }
  return out;
}

void mark_item_missing(FeatureVector& fv, std::string_view id) {
  for (const auto& n : item_names(item(id))) fv.mark_missing(n);
}

// Stores a summary plus, for length items, its instance-unit duplicate.
void put_summary(FeatureVector& fv, std::string_view id, const StatSummary& s, double scale) {
  const auto& it = item(id);
  fv.set_summary(it.id, s);
  if (it.unit == Unit::Length) fv.set_summary(it.id, s.scaled(scale), "_raw");
}

void put_scalar(FeatureVector& fv, std::string_view id, double v, double scale) {
  const auto& it = item(id);
  fv.set(it.id, v);
  if (it.unit == Unit::Length) fv.set(std::string(it.id) + "_raw", v * scale);
  if (it.unit == Unit::Area) fv.set(std::string(it.id) + "_raw", v * scale * scale);
}

std::vector<double> as_doubles(const std::vector<std::size_t>& v) {
  return {v.begin(), v.end()};
}

std::vector<std::size_t> customers_of(const Instance& inst) {
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < inst.dimension; ++i)
    if (i != inst.depot) c.push_back(i);
  return c;
}

}  // namespace

void FeatureVector::set(const std::string& name, double value) {
  if (!std::isfinite(value)) throw std::logic_error("non-finite value for feature " + name);
  values_[name] = value;
  missing_.erase(name);
}

void FeatureVector::set_summary(const std::string& item, const StatSummary& s, const std::string& suffix) {
  const double vals[] = {s.min, s.max, s.mean, s.median, s.sd, s.var, s.skew, s.kurtosis};
  for (std::size_t k = 0; k < 8; ++k) set(item + "_" + kStatNames[k] + suffix, vals[k]);
}

void FeatureVector::mark_missing(const std::string& name) {
  values_.erase(name);
  missing_.insert(name);
}

std::optional<double> FeatureVector::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void FeatureVector::merge(const FeatureVector& other) {
  for (const auto& [k, v] : other.values_) set(k, v);
  for (const auto& k : other.missing_) mark_missing(k);
  probing_partial = probing_partial || other.probing_partial;
  if (instance_name.empty()) instance_name = other.instance_name;
}

const std::vector<std::string>& feature_catalog() {
  static const std::vector<std::string> catalog = [] {
    std::vector<std::string> out;
    for (const auto& it : kItems) {
      auto names = item_names(it);
      out.insert(out.end(), names.begin(), names.end());
    }
    return out;
  }();
  return catalog;
}

const std::vector<std::string>& projection_feature_names() {
  static const std::vector<std::string> names = {
      "NN3_sd",   "ND8_var",     "P5_mean",  "NN3_skew", "P6_sd",   "P4_mean", "P11_skew", "ND2",
      "NN2_max",  "NN2_skew",    "VRP4",     "P10_mean", "MST3_median", "ND5_mean", "P7_var",  "P2_mean",
      "P1_mean",  "P3_mean",     "G2",       "P6_skew",  "P9_mean", "P5_skew", "MST2_mean"};
  return names;
}

bool feature_needs_coords(const std::string& name) {
  static const std::unordered_map<std::string, bool> table = [] {
    std::unordered_map<std::string, bool> t;
    for (const auto& it : kItems)
      for (const auto& n : item_names(it)) t[n] = it.needs_coords;
    return t;
  }();
  auto it = table.find(name);
  return it != table.end() && it->second;
}

FeatureGeometry feature_geometry(const Instance& inst, const DistanceMatrix& dmat) {
  FeatureGeometry g;
  const std::size_t n = inst.dimension;
  if (inst.coords) {
    const auto t = UnitSquareTransform::fit(*inst.coords);
    g.scale = t.scale;
    g.unit_coords = t.apply(*inst.coords);
    g.metric = DistanceMatrix(n);
    const auto& p = *g.unit_coords;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) g.metric(i, j) = g.metric(j, i) = euclid(p[i], p[j]);
  } else {
    double mx = 0.0;
    for (double v : dmat.data()) mx = std::max(mx, v);
    g.scale = mx > 0.0 ? mx : 1.0;
    g.metric = DistanceMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g.metric(i, j) = dmat(i, j) / g.scale;
  }
  return g;
}

std::int64_t min_vehicles(const Instance& inst) {
  const auto total = inst.total_demand();
  return std::max<std::int64_t>(1, (total + inst.capacity - 1) / inst.capacity);
}

FeatureVector nd_features(const Instance& inst, const DistanceMatrix& dmat, const FeatureGeometry& geo,
                          const DbscanParams& dbscan_params) {
  FeatureVector fv;
  fv.instance_name = inst.name;
  const std::size_t n = inst.dimension;
  const double s = geo.scale;

  std::vector<double> pair_d;
  std::vector<double> pair_raw;
  pair_d.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_d.push_back(geo.metric(i, j));
      pair_raw.push_back(dmat(i, j));
    }
  put_summary(fv, "ND1", summarize(pair_d), s);

  double lower = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && geo.metric(i, j) > 0.0) best = std::min(best, geo.metric(i, j));
    if (std::isfinite(best)) lower += best;
  }
  put_scalar(fv, "ND2", lower, s);

  std::sort(pair_raw.begin(), pair_raw.end());
  const auto distinct = static_cast<double>(std::unique(pair_raw.begin(), pair_raw.end()) - pair_raw.begin());
  put_scalar(fv, "ND3", pair_d.empty() ? 0.0 : distinct / static_cast<double>(pair_d.size()), s);

  if (!geo.unit_coords) {
    for (auto id : {"ND4", "ND5", "ND6", "ND7", "ND8", "ND9"}) mark_item_missing(fv, id);
    return fv;
  }

  const auto& p = *geo.unit_coords;
  const auto customers = customers_of(inst);
  Point centroid{};
  for (auto c : customers) {
    centroid.x += p[c].x;
    centroid.y += p[c].y;
  }
  if (!customers.empty()) {
    centroid.x /= static_cast<double>(customers.size());
    centroid.y /= static_cast<double>(customers.size());
  }
  fv.set("ND4_x", centroid.x);
  fv.set("ND4_y", centroid.y);
  const auto t = UnitSquareTransform::fit(*inst.coords);
  fv.set("ND4_x_raw", centroid.x * t.scale + t.x0);
  fv.set("ND4_y_raw", centroid.y * t.scale + t.y0);

  std::vector<double> to_centroid;
  for (auto c : customers) to_centroid.push_back(euclid(p[c], centroid));
  put_summary(fv, "ND5", summarize(to_centroid), s);

  std::vector<Point> cust_pts;
  for (auto c : customers) cust_pts.push_back(p[c]);
  const auto clusters = dbscan(cust_pts, dbscan_params);
  const auto k = static_cast<std::size_t>(clusters.cluster_count);
  std::vector<double> sizes(k, 0.0);
  std::vector<Point> centers(k);
  for (std::size_t i = 0; i < cust_pts.size(); ++i) {
    const int l = clusters.labels[i];
    if (l < 0) continue;
    sizes[l] += 1.0;
    centers[l].x += cust_pts[i].x;
    centers[l].y += cust_pts[i].y;
  }
  for (std::size_t c = 0; c < k; ++c) {
    centers[c].x /= sizes[c];
    centers[c].y /= sizes[c];
  }
  std::vector<double> center_d;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) center_d.push_back(euclid(centers[a], centers[b]));

  put_scalar(fv, "ND6", static_cast<double>(k), s);
  put_summary(fv, "ND7", summarize(sizes), s);
  put_summary(fv, "ND8", summarize(center_d), s);
  put_scalar(fv, "ND9", customers.empty() ? 0.0 : static_cast<double>(k) / static_cast<double>(customers.size()), s);
  return fv;
}

FeatureVector mst_features(const FeatureGeometry& geo, std::size_t depot) {
  FeatureVector fv;
  const auto tree = minimum_spanning_tree(geo.metric, depot);
  put_summary(fv, "MST1", summarize(tree.edge_costs), geo.scale);
  put_scalar(fv, "MST1_total", tree.total, geo.scale);
  put_summary(fv, "MST2", summarize(as_doubles(tree_degrees(tree))), geo.scale);
  put_summary(fv, "MST3", summarize(as_doubles(tree_depths(tree))), geo.scale);
  return fv;
}

ProbingFeatures probing_features(const Instance& inst, const FeatureGeometry& geo, const ProbingConfig& cfg,
                                 std::uint64_t seed) {
  ProbingFeatures out;
  auto& fv = out.features;
  const std::size_t n = inst.dimension;
  const char* ids[] = {"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9", "P10", "P11"};
  if (n < 4 || cfg.restarts == 0) {
    for (auto id : ids) mark_item_missing(fv, id);
    return out;
  }
  out.trace = run_probing(geo.metric, cfg, seed);
  const auto& runs = out.trace.restarts;
  fv.probing_partial = out.trace.partial;
  const double s = geo.scale;
  const auto& d = geo.metric;
  const auto q = static_cast<std::size_t>(std::min<std::int64_t>(min_vehicles(inst), static_cast<std::int64_t>(n)));

  std::vector<double> steps, exchanges, construction, local_min, improvements, crossings;
  std::vector<double> seg_len, seg_edges, seg_edge_len;
  double quart[4] = {0, 0, 0, 0};
  std::map<std::pair<std::size_t, std::size_t>, double> edge_count;

  for (const auto& r : runs) {
    steps.push_back(static_cast<double>(r.improving_steps));
    exchanges.push_back(static_cast<double>(r.exchanges));
    construction.push_back(r.construction_cost);
    local_min.push_back(r.local_min_cost);
    improvements.insert(improvements.end(), r.improvements.begin(), r.improvements.end());

    std::vector<double> edge_len(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = r.tour[i];
      const auto b = r.tour[(i + 1) % n];
      edge_len[i] = d(a, b);
      edge_count[{std::min(a, b), std::max(a, b)}] += 1.0;
    }
    quart[0] += quantile(edge_len, 0.25);
    quart[1] += quantile(edge_len, 0.50);
    quart[2] += quantile(edge_len, 0.75);
    quart[3] += quantile(edge_len, 1.00);

    // Cut the cycle at the q longest edges (earlier position wins ties).
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edge_len[a] > edge_len[b]; });
    std::vector<bool> cut(n, false);
    for (std::size_t k = 0; k < q; ++k) cut[order[k]] = true;
    const std::size_t first_cut = order[0];
    double len = 0.0;
    std::size_t count = 0;
    for (std::size_t step = 1; step <= n; ++step) {
      const std::size_t e = (first_cut + step) % n;
      if (cut[e]) {
        seg_len.push_back(len);
        seg_edges.push_back(static_cast<double>(count));
        len = 0.0;
        count = 0;
      } else {
        len += edge_len[e];
        ++count;
        seg_edge_len.push_back(edge_len[e]);
      }
    }

    if (geo.unit_coords) {
      const auto& p = *geo.unit_coords;
      std::size_t x = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
          if (i == 0 && j == n - 1) continue;
          if (segments_cross(p[r.tour[i]], p[r.tour[(i + 1) % n]], p[r.tour[j]], p[r.tour[(j + 1) % n]])) ++x;
        }
      }
      crossings.push_back(static_cast<double>(x));
    }
  }

  const double runs_n = static_cast<double>(runs.size());
  put_summary(fv, "P1", summarize(steps), s);
  double qmean = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double v = quart[k] / runs_n;
    qmean += v / 4.0;
    fv.set("P2_" + std::string(kQuartileNames[k]), v);
    fv.set("P2_" + std::string(kQuartileNames[k]) + "_raw", v * s);
  }
  fv.set("P2_mean", qmean);
  fv.set("P2_mean_raw", qmean * s);
  put_summary(fv, "P3", summarize(seg_len), s);
  put_summary(fv, "P4", summarize(seg_edges), s);
  put_summary(fv, "P5", summarize(seg_edge_len), s);
  put_summary(fv, "P6", summarize(construction), s);
  put_summary(fv, "P7", summarize(local_min), s);
  if (geo.unit_coords) {
    put_summary(fv, "P8", summarize(crossings), s);
  } else {
    mark_item_missing(fv, "P8");
  }
  put_summary(fv, "P9", summarize(improvements), s);
  put_summary(fv, "P10", summarize(exchanges), s);
  std::vector<double> freq;
  freq.reserve(edge_count.size());
  for (const auto& [e, c] : edge_count) freq.push_back(c / runs_n);
  put_summary(fv, "P11", summarize(freq), s);
  return out;
}

FeatureVector geometric_features(const Instance& inst, const FeatureGeometry& geo) {
  FeatureVector fv;
  if (!geo.unit_coords) {
    for (auto id : {"G1", "G2", "G3", "G4", "G5"}) mark_item_missing(fv, id);
    return fv;
  }
  const auto& p = *geo.unit_coords;
  const double s = geo.scale;
  const std::size_t n = p.size();

  double xmin = p[0].x, xmax = p[0].x, ymin = p[0].y, ymax = p[0].y;
  for (const auto& q : p) {
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
    ymin = std::min(ymin, q.y);
    ymax = std::max(ymax, q.y);
  }
  put_scalar(fv, "G1", (xmax - xmin) * (ymax - ymin), s);

  const auto hull = convex_hull(p);
  std::vector<double> edges;
  for (std::size_t i = 0; i < hull.size() && hull.size() > 1; ++i)
    edges.push_back(euclid(p[hull[i]], p[hull[(i + 1) % hull.size()]]));

  if (hull.size() < 3) {
    put_scalar(fv, "G2", 0.0, s);
    put_scalar(fv, "G3", 1.0, s);
    put_summary(fv, "G4", StatSummary{}, s);
    put_summary(fv, "G5", summarize(edges), s);
    return fv;
  }
  put_scalar(fv, "G2", polygon_area(p, hull), s);
  put_scalar(fv, "G3", static_cast<double>(hull.size()) / static_cast<double>(n), s);

  std::vector<bool> on_hull(n, false);
  for (auto h : hull) on_hull[h] = true;
  std::vector<double> inner;
  for (std::size_t i = 0; i < n; ++i) {
    if (on_hull[i]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < hull.size(); ++k)
      best = std::min(best, point_segment_distance(p[i], p[hull[k]], p[hull[(k + 1) % hull.size()]]));
    inner.push_back(best);
  }
  put_summary(fv, "G4", summarize(inner), s);
  put_summary(fv, "G5", summarize(edges), s);
  (void)inst;
  return fv;
}

FeatureVector nn_features(const FeatureGeometry& geo, const std::vector<std::size_t>& kset) {
  FeatureVector fv;
  const auto& d = geo.metric;
  const std::size_t n = d.size();
  const double s = geo.scale;

  std::vector<std::size_t> ks;
  for (auto k : kset)
    if (k >= 1 && k < n) ks.push_back(k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const std::size_t kmax = std::max<std::size_t>(ks.empty() ? 0 : ks.back(), std::min<std::size_t>(2, n - 1));
  const auto nearest = nearest_neighbors(d, kmax);

  std::vector<double> first;
  for (std::size_t i = 0; i < n; ++i)
    if (!nearest[i].empty()) first.push_back(d(i, nearest[i][0]));
  put_summary(fv, "NN1", summarize(first), s);

  std::vector<double> scc_counts, wcc_counts, scc_sizes, wcc_sizes, indeg, ratios;
  for (auto k : ks) {
    const auto g = knn_digraph(nearest, k);
    const auto scc = strongly_connected_components(g);
    const auto wcc = weakly_connected_components(g);
    scc_counts.push_back(static_cast<double>(scc.count()));
    wcc_counts.push_back(static_cast<double>(wcc.count()));
    for (auto z : scc.sizes) scc_sizes.push_back(static_cast<double>(z));
    for (auto z : wcc.sizes) wcc_sizes.push_back(static_cast<double>(z));
    std::vector<std::size_t> in(n, 0);
    for (const auto& arcs : g)
      for (auto w : arcs) ++in[w];
    for (auto v : in) indeg.push_back(static_cast<double>(v));
    ratios.push_back(static_cast<double>(scc.count()) / static_cast<double>(wcc.count()));
  }
  put_summary(fv, "NN2", summarize(scc_counts), s);
  put_summary(fv, "NN3", summarize(wcc_counts), s);
  put_summary(fv, "NN4", summarize(scc_sizes), s);
  put_summary(fv, "NN5", summarize(wcc_sizes), s);
  put_summary(fv, "NN6", summarize(indeg), s);
  put_summary(fv, "NN7", summarize(ratios), s);

  if (!geo.unit_coords) {
    mark_item_missing(fv, "NN8");
    return fv;
  }
  const auto& p = *geo.unit_coords;
  std::vector<double> angles;
  for (std::size_t i = 0; i < n; ++i) {
    if (nearest[i].size() < 2) continue;
    const Point a{p[nearest[i][0]].x - p[i].x, p[nearest[i][0]].y - p[i].y};
    const Point b{p[nearest[i][1]].x - p[i].x, p[nearest[i][1]].y - p[i].y};
    const double cross = a.x * b.y - a.y * b.x;
    const double dot = a.x * b.x + a.y * b.y;
    angles.push_back((cross == 0.0 && dot == 0.0) ? 0.0 : std::atan2(std::abs(cross), dot));
  }
  put_summary(fv, "NN8", summarize(angles), s);
  return fv;
}

FeatureVector vrp_features(const Instance& inst, const FeatureGeometry& geo) {
  FeatureVector fv;
  const double s = geo.scale;
  const auto customers = customers_of(inst);

  if (geo.unit_coords) {
    const auto& p = *geo.unit_coords;
    Point c{};
    for (auto i : customers) {
      c.x += p[i].x;
      c.y += p[i].y;
    }
    if (!customers.empty()) {
      c.x /= static_cast<double>(customers.size());
      c.y /= static_cast<double>(customers.size());
    } else {
      c = p[inst.depot];
    }
    put_scalar(fv, "VRP1", euclid(c, p[inst.depot]), s);
  } else {
    mark_item_missing(fv, "VRP1");
  }

  std::vector<double> to_depot, demand;
  for (auto i : customers) {
    to_depot.push_back(geo.metric(i, inst.depot));
    demand.push_back(static_cast<double>(inst.demands[i]));
  }
  put_summary(fv, "VRP2", summarize(to_depot), s);
  put_summary(fv, "VRP3", summarize(demand), s);

  const auto k = static_cast<double>(min_vehicles(inst));
  put_scalar(fv, "VRP4", static_cast<double>(inst.total_demand()) / (k * static_cast<double>(inst.capacity)), s);
  put_scalar(fv, "VRP5", static_cast<double>(customers.size()) / k, s);
  return fv;
}

FeatureVector extract_all(const Instance& inst, const FeatureConfig& cfg, std::uint64_t seed) {
  const auto dmat = distance_matrix(inst);
  const auto geo = feature_geometry(inst, dmat);
  FeatureVector fv;
  fv.instance_name = inst.name;
  fv.merge(nd_features(inst, dmat, geo, cfg.dbscan));
  fv.merge(mst_features(geo, inst.depot));
  fv.merge(probing_features(inst, geo, cfg.probing, splitmix64(seed)).features);
  fv.merge(geometric_features(inst, geo));
  fv.merge(nn_features(geo, cfg.kset));
  fv.merge(vrp_features(inst, geo));
  return fv;
}

}  // namespace cvrpisa
