#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cvrpisa/dbscan.hpp"
#include "cvrpisa/instance.hpp"
#include "cvrpisa/lin_kernighan.hpp"
#include "cvrpisa/stats.hpp"

namespace cvrpisa {

// Named feature values of one instance. Every stored value is finite; names
// that could not be computed are recorded as missing instead.
class FeatureVector {
 public:
  std::string instance_name;
  bool probing_partial = false;

  void set(const std::string& name, double value);
  // Stores <item>_<stat><suffix> for all eight statistics.
  void set_summary(const std::string& item, const StatSummary& s, const std::string& suffix = "");
  void mark_missing(const std::string& name);

  std::optional<double> get(const std::string& name) const;
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  const std::map<std::string, double>& values() const { return values_; }
  const std::set<std::string>& missing() const { return missing_; }

  // Absorbs all entries of `other`; later values win.
  void merge(const FeatureVector& other);

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::map<std::string, double> values_;
  std::set<std::string> missing_;
};

struct FeatureConfig {
  ProbingConfig probing;
  DbscanParams dbscan;
  std::vector<std::size_t> kset{1, 3, 5, 7, 10};
};

// The metric all canonical features are computed on: Euclidean distances of
// the unit-square-normalized coordinates, or, without coordinates, the
// explicit matrix divided by its largest entry. `scale` maps canonical
// lengths back to instance units (the "_raw" duplicates).
struct FeatureGeometry {
  DistanceMatrix metric;
  double scale = 1.0;
  std::optional<std::vector<Point>> unit_coords;
};

FeatureGeometry feature_geometry(const Instance& inst, const DistanceMatrix& dmat);

// Ordered, stable list of every feature name extract_all can emit.
const std::vector<std::string>& feature_catalog();

// The 23 features of the published projection, in its column order.
const std::vector<std::string>& projection_feature_names();

// Names that depend on node coordinates and go missing without them.
bool feature_needs_coords(const std::string& name);

FeatureVector nd_features(const Instance& inst, const DistanceMatrix& dmat, const FeatureGeometry& geo,
                          const DbscanParams& dbscan);
FeatureVector mst_features(const FeatureGeometry& geo, std::size_t depot);

struct ProbingFeatures {
  FeatureVector features;
  ProbingTrace trace;
};
ProbingFeatures probing_features(const Instance& inst, const FeatureGeometry& geo, const ProbingConfig& cfg,
                                 std::uint64_t seed);

FeatureVector geometric_features(const Instance& inst, const FeatureGeometry& geo);
FeatureVector nn_features(const FeatureGeometry& geo, const std::vector<std::size_t>& kset);
FeatureVector vrp_features(const Instance& inst, const FeatureGeometry& geo);

// Minimum vehicle count ceil(total demand / capacity), at least 1.
std::int64_t min_vehicles(const Instance& inst);

FeatureVector extract_all(const Instance& inst, const FeatureConfig& cfg, std::uint64_t seed);

}  // namespace cvrpisa
