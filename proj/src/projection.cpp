#include "cvrpisa/projection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "cvrpisa/csv.hpp"
#include "cvrpisa/error.hpp"

namespace cvrpisa {

namespace {

using nlohmann::json;

// Columns as printed, two decimals.
constexpr double kPublished[23][2] = {
    {-0.93, -0.34}, {-0.29, 0.73}, {-0.67, 0.62}, {-1.23, 0.89}, {-1.07, 0.19}, {-0.91, 0.80},
    {-0.45, 0.35},  {-0.58, 0.50}, {-0.43, 0.96}, {-0.52, 1.12}, {-0.65, 0.48}, {-0.48, 0.86},
    {-0.57, 0.86},  {0.82, 0.61},  {0.42, 1.12},  {0.52, 0.85},  {-0.48, 0.32}, {0.56, 0.73},
    {0.61, 0.93},   {0.11, 0.74},  {0.51, 0.66},  {-0.19, 0.36}, {-0.42, 1.63}};

TransformKind kind_from_string(const std::string& s) {
  if (s == "identity") return TransformKind::Identity;
  if (s == "prelim") return TransformKind::Prelim;
  if (s == "minmax") return TransformKind::MinMax;
  throw Error("model: unknown transform kind '" + s + "'");
}

json column_to_json(const ColumnTransform& t) {
  return json{{"clamp", t.clamp}, {"lo", t.lo},         {"hi", t.hi}, {"power", t.power},
              {"shift", t.shift}, {"lambda", t.lambda}, {"mean", t.mean}, {"sd", t.sd}};
}

ColumnTransform column_from_json(const json& j) {
  ColumnTransform t;
  t.clamp = j.at("clamp").get<bool>();
  t.lo = j.at("lo").get<double>();
  t.hi = j.at("hi").get<double>();
  t.power = j.at("power").get<bool>();
  t.shift = j.at("shift").get<double>();
  t.lambda = j.at("lambda").get<double>();
  t.mean = j.at("mean").get<double>();
  t.sd = j.at("sd").get<double>();
  return t;
}

}  // namespace

const char* to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Identity: return "identity";
    case TransformKind::Prelim: return "prelim";
    case TransformKind::MinMax: return "minmax";
  }
  return "identity";
}

void ProjectionModel::validate() const {
  const auto d = static_cast<Eigen::Index>(feature_names.size());
  if (matrix.cols() != d) throw Error("model: matrix has " + std::to_string(matrix.cols()) + " columns for " +
                                      std::to_string(d) + " features");
  if (transform == TransformKind::Prelim && prelim.size() != feature_names.size())
    throw Error("model: prelim transform size mismatch");
  if (transform == TransformKind::MinMax && (min.size() != feature_names.size() || max.size() != feature_names.size()))
    throw Error("model: minmax transform size mismatch");
  std::set<std::string> seen(feature_names.begin(), feature_names.end());
  if (seen.size() != feature_names.size()) throw Error("model: duplicate feature names");
}

Eigen::VectorXd ProjectionModel::normalize(const Eigen::VectorXd& raw) const {
  Eigen::VectorXd out = raw;
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const auto u = static_cast<std::size_t>(j);
    switch (transform) {
      case TransformKind::Identity: break;
      case TransformKind::Prelim: out[j] = prelim[u].apply(raw[j]); break;
      case TransformKind::MinMax: {
        const double span = max[u] - min[u];
        out[j] = span > 0.0 ? (raw[j] - min[u]) / span : 0.0;
        break;
      }
    }
  }
  return out;
}

ProjectionModel builtin_paper_model() {
  ProjectionModel m;
  m.feature_names = projection_feature_names();
  m.matrix.resize(2, 23);
  for (Eigen::Index j = 0; j < 23; ++j) {
    m.matrix(0, j) = kPublished[j][0];
    m.matrix(1, j) = kPublished[j][1];
  }
  return m;
}

std::vector<std::string> unknown_feature_names(const ProjectionModel& model) {
  const auto& cat = feature_catalog();
  const std::set<std::string> known(cat.begin(), cat.end());
  std::vector<std::string> out;
  for (const auto& n : model.feature_names)
    if (!known.count(n)) out.push_back(n);
  return out;
}

std::array<double, 2> project_values(const ProjectionModel& model, const Eigen::VectorXd& raw) {
  if (raw.size() != static_cast<Eigen::Index>(model.dimension())) throw Error("project: dimension mismatch");
  const Eigen::Vector2d z = model.matrix * model.normalize(raw);
  return {z[0], z[1]};
}

std::array<double, 2> project(const ProjectionModel& model, const FeatureVector& fv) {
  Eigen::VectorXd raw(static_cast<Eigen::Index>(model.dimension()));
  std::vector<std::string> missing;
  for (std::size_t j = 0; j < model.dimension(); ++j) {
    const auto v = fv.get(model.feature_names[j]);
    if (v && std::isfinite(*v)) {
      raw[static_cast<Eigen::Index>(j)] = *v;
    } else {
      missing.push_back(model.feature_names[j]);
    }
  }
  if (!missing.empty()) throw MissingFeature(std::move(missing));
  return project_values(model, raw);
}

BatchProjection project_batch(const ProjectionModel& model, const MetadataTable& table, std::size_t jobs) {
  model.validate();
  std::vector<int> cols;
  for (const auto& n : model.feature_names) cols.push_back(table.feature_index(n));

  const std::size_t n = table.size();
  std::vector<std::vector<std::string>> missing(n);
  std::vector<std::array<double, 2>> z(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t r = next++; r < n; r = next++) {
      Eigen::VectorXd raw(static_cast<Eigen::Index>(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const double v = cols[j] >= 0 ? table.features(static_cast<Eigen::Index>(r), cols[j])
                                      : std::numeric_limits<double>::quiet_NaN();
        if (!std::isfinite(v)) missing[r].push_back(model.feature_names[j]);
        raw[static_cast<Eigen::Index>(j)] = v;
      }
      if (missing[r].empty()) z[r] = project_values(model, raw);
    }
  };
  const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  BatchProjection out;
  std::vector<std::size_t> ok;
  for (std::size_t r = 0; r < n; ++r) {
    if (missing[r].empty()) {
      ok.push_back(r);
    } else {
      out.excluded.push_back({table.instances[r], missing[r]});
    }
  }
  out.z.resize(static_cast<Eigen::Index>(ok.size()), 2);
  for (std::size_t k = 0; k < ok.size(); ++k) {
    out.instances.push_back(table.instances[ok[k]]);
    out.sources.push_back(table.sources[ok[k]]);
    out.z(static_cast<Eigen::Index>(k), 0) = z[ok[k]][0];
    out.z(static_cast<Eigen::Index>(k), 1) = z[ok[k]][1];
  }
  return out;
}

ProjectionModel with_fitted_transform(const ProjectionModel& model, const MetadataTable& reference,
                                      const PrelimConfig& cfg) {
  std::vector<int> cols;
  std::vector<std::string> absent;
  for (const auto& n : model.feature_names) {
    cols.push_back(reference.feature_index(n));
    if (cols.back() < 0) absent.push_back(n);
  }
  if (!absent.empty()) throw MissingFeature(std::move(absent));

  std::vector<Eigen::Index> rows;
  for (Eigen::Index r = 0; r < reference.features.rows(); ++r) {
    bool complete = true;
    for (int c : cols) complete = complete && std::isfinite(reference.features(r, c));
    if (complete) rows.push_back(r);
  }
  if (rows.size() < 2) throw Error("fitting a transform needs at least 2 complete reference rows");

  ProjectionModel out = model;
  out.transform = TransformKind::Prelim;
  out.prelim.clear();
  out.min.clear();
  out.max.clear();
  for (int c : cols) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) v[static_cast<Eigen::Index>(k)] = reference.features(rows[k], c);
    out.prelim.push_back(fit_column_transform(v, cfg));
  }
  return out;
}

std::string model_to_json(const ProjectionModel& model) {
  model.validate();
  json j;
  j["feature_names"] = model.feature_names;
  json rows = json::array();
  for (Eigen::Index r = 0; r < 2; ++r) {
    std::vector<double> row(static_cast<std::size_t>(model.matrix.cols()));
    for (Eigen::Index c = 0; c < model.matrix.cols(); ++c) row[static_cast<std::size_t>(c)] = model.matrix(r, c);
    rows.push_back(row);
  }
  j["matrix"] = rows;
  json t{{"kind", to_string(model.transform)}};
  if (model.transform == TransformKind::Prelim) {
    json cols = json::array();
    for (const auto& c : model.prelim) cols.push_back(column_to_json(c));
    t["columns"] = cols;
  } else if (model.transform == TransformKind::MinMax) {
    t["min"] = model.min;
    t["max"] = model.max;
  }
  j["transform"] = t;
  return j.dump(2) + "\n";
}

ProjectionModel model_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ProjectionModel m;
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    const auto& rows = j.at("matrix");
    if (!rows.is_array() || rows.size() != 2) throw Error("model: matrix must have 2 rows");
    const auto d = static_cast<Eigen::Index>(m.feature_names.size());
    m.matrix.resize(2, d);
    for (Eigen::Index r = 0; r < 2; ++r) {
      const auto row = rows[static_cast<std::size_t>(r)].get<std::vector<double>>();
      if (static_cast<Eigen::Index>(row.size()) != d) throw Error("model: matrix row length differs from feature count");
      for (Eigen::Index c = 0; c < d; ++c) m.matrix(r, c) = row[static_cast<std::size_t>(c)];
    }
    const auto& t = j.at("transform");
    m.transform = kind_from_string(t.at("kind").get<std::string>());
    if (m.transform == TransformKind::Prelim)
      for (const auto& c : t.at("columns")) m.prelim.push_back(column_from_json(c));
    if (m.transform == TransformKind::MinMax) {
      m.min = t.at("min").get<std::vector<double>>();
      m.max = t.at("max").get<std::vector<double>>();
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("model: malformed json: ") + e.what());
  }
}

void save_model(const ProjectionModel& model, const std::filesystem::path& path) {
  atomic_write(path, model_to_json(model));
}

ProjectionModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string format_coordinates(const std::vector<std::string>& instances, const Eigen::MatrixXd& z) {
  std::string out = csv_line({"Instances", "Z1", "Z2"});
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out += csv_line({instances[i], format_double(z(r, 0)), format_double(z(r, 1))});
  }
  return out;
}

}  // namespace cvrpisa
