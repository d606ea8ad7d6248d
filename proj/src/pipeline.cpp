#include "cvrpisa/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "cvrpisa/csv.hpp"
#include "cvrpisa/error.hpp"

namespace cvrpisa {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
  std::string l = v;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (l == "true" || l == "1" || l == "yes") return true;
  if (l == "false" || l == "0" || l == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& key, const std::string& v) {
  double d = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(d))
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  return d;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t u = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), u);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + v + "'");
  return u;
}

const char* b2s(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

std::string PipelineConfig::describe() const {
  std::string s = "epsilon=" + format_double(prelim.epsilon) + " k=" + (k_auto ? std::string("auto") : std::to_string(k)) +
                  " ntry=" + std::to_string(ntry) + " phi_max=" + b2s(prelim.maximize) +
                  " phi_bnd=" + b2s(prelim.bound) + " phi_nrm=" + b2s(prelim.normalized) + " phi_num=" + b2s(numeric) +
                  " prenormalized=" + b2s(prelim.prenormalized) + " seed=" + std::to_string(seed) +
                  " budget=" + std::to_string(budget) + " corr_threshold=" + format_double(corr_threshold) +
                  " corr_target=" + (corr_on_raw ? "raw" : "transformed") +
                  " k_sweep_max=" + std::to_string(k_sweep_max) + " trees=" + std::to_string(forest.trees);
  return s;
}

PipelineConfig parse_pipeline_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (kv.count(key)) throw ConfigError("config key '" + key + "' given twice");
    kv[key] = trim(line.substr(eq + 1));
  }

  for (const char* req : {"epsilon", "k", "ntry", "phi_max", "phi_bnd", "phi_nrm"})
    if (!kv.count(req)) throw ConfigError("config is missing required key '" + std::string(req) + "'");

  PipelineConfig c;
  for (const auto& [key, v] : kv) {
    if (key == "epsilon") {
      c.prelim.epsilon = parse_double(key, v);
      if (!(c.prelim.epsilon > 0.0)) throw ConfigError("config key 'epsilon' must be positive");
    } else if (key == "k") {
      if (v == "auto") {
        c.k_auto = true;
      } else {
        c.k = parse_uint(key, v);
        if (c.k < 2) throw ConfigError("config key 'k' must be at least 2");
      }
    } else if (key == "ntry") {
      c.ntry = parse_uint(key, v);
      if (c.ntry < 1) throw ConfigError("config key 'ntry' must be at least 1");
    } else if (key == "phi_max") {
      c.prelim.maximize = parse_bool(key, v);
    } else if (key == "phi_bnd") {
      c.prelim.bound = parse_bool(key, v);
    } else if (key == "phi_nrm") {
      c.prelim.normalized = parse_bool(key, v);
    } else if (key == "phi_num") {
      c.numeric = parse_bool(key, v);
    } else if (key == "prenormalized") {
      c.prelim.prenormalized = parse_bool(key, v);
    } else if (key == "seed") {
      c.seed = parse_uint(key, v);
    } else if (key == "budget") {
      c.budget = parse_uint(key, v);
      if (c.budget < 1) throw ConfigError("config key 'budget' must be at least 1");
    } else if (key == "corr_threshold") {
      c.corr_threshold = parse_double(key, v);
    } else if (key == "corr_target") {
      if (v != "raw" && v != "transformed") throw ConfigError("config key 'corr_target' must be raw or transformed");
      c.corr_on_raw = v == "raw";
    } else if (key == "k_sweep_max") {
      c.k_sweep_max = parse_uint(key, v);
    } else if (key == "trees") {
      c.forest.trees = parse_uint(key, v);
      if (c.forest.trees < 1) throw ConfigError("config key 'trees' must be at least 1");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_pipeline_config(in);
}

PipelineResult run_pipeline(const MetadataTable& table, const PipelineConfig& cfg) {
  PipelineResult res;
  res.log.push_back("config: " + cfg.describe());
  if (table.algorithm_names.empty()) throw Error("metadata has no algo_ columns");
  if (table.feature_names.size() < 2) throw Error("metadata needs at least 2 feature columns");

  // Feature columns missing for most rows would exclude most instances; drop
  // them first, then exclude rows that are still incomplete.
  const auto n_all = table.size();
  std::vector<std::size_t> fcols;
  for (std::size_t j = 0; j < table.feature_names.size(); ++j) {
    std::size_t present = 0;
    for (std::size_t r = 0; r < n_all; ++r)
      present += std::isfinite(table.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j))) ? 1 : 0;
    if (2 * present > n_all) {
      fcols.push_back(j);
    } else {
      res.log.push_back("warning: feature " + table.feature_names[j] + " missing for " +
                        std::to_string(n_all - present) + " of " + std::to_string(n_all) + " rows; dropped");
    }
  }
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < n_all; ++r) {
    std::vector<std::string> missing;
    const auto ri = static_cast<Eigen::Index>(r);
    for (auto j : fcols)
      if (!std::isfinite(table.features(ri, static_cast<Eigen::Index>(j)))) missing.push_back(table.feature_names[j]);
    for (std::size_t a = 0; a < table.algorithm_names.size(); ++a)
      if (!std::isfinite(table.performance(ri, static_cast<Eigen::Index>(a))))
        missing.push_back("algo_" + table.algorithm_names[a]);
    if (missing.empty()) {
      rows.push_back(r);
    } else {
      res.excluded.push_back({table.instances[r], std::move(missing)});
    }
  }
  for (const auto& e : res.excluded)
    res.log.push_back("excluded " + e.instance + ": missing " + join(e.missing, ", "));

  Eigen::MatrixXd f(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(fcols.size()));
  Eigen::MatrixXd y(static_cast<Eigen::Index>(rows.size()), table.performance.cols());
  std::vector<std::string> fnames;
  for (auto j : fcols) fnames.push_back(table.feature_names[j]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto ri = static_cast<Eigen::Index>(i);
    res.instances.push_back(table.instances[rows[i]]);
    for (std::size_t j = 0; j < fcols.size(); ++j)
      f(ri, static_cast<Eigen::Index>(j)) = table.features(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(fcols[j]));
    y.row(ri) = table.performance.row(static_cast<Eigen::Index>(rows[i]));
  }
  res.algorithm_names = table.algorithm_names;
  res.log.push_back("instances used: " + std::to_string(rows.size()) + " of " + std::to_string(n_all));
  if (rows.size() < 3) throw Error("fewer than 3 complete instances");

  // PRELIM
  res.prelim = prelim(f, y, cfg.prelim, fnames);
  for (const auto& w : res.prelim.warnings) res.log.push_back("warning: " + w);
  for (auto j : res.prelim.kept_features) res.feature_names.push_back(fnames[j]);
  const Eigen::MatrixXd& x = res.prelim.features;
  if (x.cols() < 2) throw Error("fewer than 2 non-constant features after PRELIM");

  // SIFTED: correlation filter
  res.correlation = correlation_filter(x, cfg.corr_on_raw ? y : res.prelim.performance, cfg.corr_threshold, 2);
  if (res.correlation.padded)
    res.log.push_back("warning: fewer than 2 features pass |r| > " + format_double(cfg.corr_threshold) +
                      "; kept the 2 strongest");
  const auto& surv = res.correlation.surviving;
  res.log.push_back("features surviving correlation filter: " + std::to_string(surv.size()) + " of " +
                    std::to_string(x.cols()));
  Eigen::MatrixXd xs(x.rows(), static_cast<Eigen::Index>(surv.size()));
  for (std::size_t j = 0; j < surv.size(); ++j) xs.col(static_cast<Eigen::Index>(j)) = x.col(static_cast<Eigen::Index>(surv[j]));

  // SIFTED: clustering
  res.kcurve = k_sweep(xs, 2, std::max(cfg.k_sweep_max, cfg.k_auto ? std::size_t{2} : cfg.k), cfg.seed);
  std::size_t k = cfg.k;
  if (cfg.k_auto) {
    k = 2;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& q : res.kcurve)
      if (q.silhouette > best) {
        best = q.silhouette;
        k = q.k;
      }
    res.log.push_back("k=auto selected K=" + std::to_string(k) + " by silhouette");
  }
  if (k > surv.size()) {
    res.log.push_back("warning: K=" + std::to_string(k) + " exceeds the " + std::to_string(surv.size()) +
                      " surviving features; using K=" + std::to_string(surv.size()));
    k = surv.size();
  }
  res.k = k;
  res.clusters = cluster_features(xs, k, cfg.seed);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::string> names;
    for (std::size_t j = 0; j < surv.size(); ++j)
      if (res.clusters.assignment[j] == c) names.push_back(res.feature_names[surv[j]]);
    res.log.push_back("cluster " + std::to_string(c) + ": " + join(names, ", "));
  }

  // SIFTED: combination search
  SelectionConfig sc{cfg.budget, cfg.forest, cfg.seed, cfg.jobs};
  res.selection = select_combination(xs, res.prelim.good, res.clusters, sc);
  res.log.push_back(std::string("combination search: ") + (res.selection.exhaustive ? "exhaustive" : "sampled") +
                    ", " + std::to_string(res.selection.evaluated.size()) + " candidates, mean OOB " +
                    format_double(res.selection.mean_oob));

  std::vector<std::size_t> chosen_cols;
  for (auto s : res.selection.chosen) {
    chosen_cols.push_back(surv[s]);
    res.chosen_names.push_back(res.feature_names[surv[s]]);
  }
  res.log.push_back("chosen features: " + join(res.chosen_names, ", "));

  // PILOT
  Eigen::MatrixXd fc(x.rows(), static_cast<Eigen::Index>(chosen_cols.size()));
  for (std::size_t j = 0; j < chosen_cols.size(); ++j)
    fc.col(static_cast<Eigen::Index>(j)) = x.col(static_cast<Eigen::Index>(chosen_cols[j]));
  if (fc.rows() <= fc.cols())
    res.log.push_back("warning: " + std::to_string(fc.rows()) + " instances for " + std::to_string(fc.cols()) +
                      " features; projection is underdetermined");
  res.pilot = pilot(fc, res.prelim.performance, PilotConfig{cfg.ntry, cfg.numeric, cfg.seed, cfg.jobs});
  res.log.push_back(std::string("PILOT ") + (cfg.numeric ? "numeric" : "analytic") + " objective " +
                    format_double(res.pilot.objective));

  res.model.feature_names = res.chosen_names;
  res.model.matrix = res.pilot.a;
  res.model.transform = TransformKind::Prelim;
  for (auto c : chosen_cols) res.model.prelim.push_back(res.prelim.feature_transforms[c]);
  return res;
}

void write_pipeline_outputs(const PipelineResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  atomic_write(dir / "coordinates.csv", format_coordinates(r.instances, r.pilot.z));

  std::vector<std::string> header{"candidate", "features", "mean_oob"};
  for (const auto& a : r.algorithm_names) header.push_back("oob_" + a);
  header.push_back("chosen");
  std::string sel = csv_line(header);
  const auto& surv = r.correlation.surviving;
  for (std::size_t i = 0; i < r.selection.evaluated.size(); ++i) {
    const auto& c = r.selection.evaluated[i];
    std::vector<std::string> names;
    for (auto s : c.features) names.push_back(r.feature_names[surv[s]]);
    std::vector<std::string> row{std::to_string(i), join(names, ";"), format_double(c.mean_oob)};
    for (double e : c.oob) row.push_back(format_double(e));
    row.push_back(c.features == r.selection.chosen ? "1" : "0");
    sel += csv_line(row);
  }
  atomic_write(dir / "selection.csv", sel);

  std::string km = csv_line({"K", "silhouette", "db", "ch"});
  for (const auto& q : r.kcurve)
    km += csv_line({std::to_string(q.k), format_double(q.silhouette), format_double(q.davies_bouldin),
                    format_double(q.calinski_harabasz)});
  atomic_write(dir / "kmetrics.csv", km);

  save_model(r.model, dir / "model.json");

  std::string log;
  for (const auto& l : r.log) log += l + "\n";
  atomic_write(dir / "pipeline.log", log);
}

}  // namespace cvrpisa
