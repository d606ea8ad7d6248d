#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvrpisa/csv.hpp"
#include "cvrpisa/error.hpp"
#include "cvrpisa/extract.hpp"
#include "cvrpisa/metadata.hpp"
#include "cvrpisa/performance.hpp"
#include "cvrpisa/pipeline.hpp"
#include "cvrpisa/projection.hpp"
#include "cvrpisa/stats.hpp"
#include "cvrpisa/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace cvrpisa;

namespace {

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kFatal = 2;

struct Global {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t jobs = 1;
  bool verbose = false;
};

void info(const Global& g, const std::string& msg) {
  if (g.verbose) std::cerr << msg << "\n";
}

std::string exclusion_report(const std::vector<Exclusion>& ex) {
  std::string out = csv_line({"instance", "missing"});
  for (const auto& e : ex) {
    std::string names;
    for (std::size_t i = 0; i < e.missing.size(); ++i) names += (i ? ";" : "") + e.missing[i];
    out += csv_line({e.instance, names});
  }
  return out;
}

// --- extract ---------------------------------------------------------------

struct ExtractArgs {
  std::string dir, out, report;
  std::size_t restarts = 20;
  double budget = 10.0;
};

int cmd_extract(const Global& g, const ExtractArgs& a) {
  const auto files = instance_files(a.dir);
  if (files.empty()) {
    std::cerr << "error: no .vrp or .tsp files in " << a.dir << "\n";
    return kFatal;
  }
  FeatureConfig cfg;
  cfg.probing.restarts = a.restarts;
  cfg.probing.time_budget_s = a.budget;
  info(g, "extracting " + std::to_string(files.size()) + " instances with " + std::to_string(g.jobs) + " jobs");
  const auto res = extract_files(files, cfg, g.seed, g.jobs);

  std::string rep = csv_line({"path", "error"});
  for (const auto& f : res.failures) {
    std::cerr << "failed: " << f.path.string() << ": " << f.message << "\n";
    rep += csv_line({f.path.filename().string(), f.message});
  }
  if (res.partial_probing)
    std::cerr << "warning: probing hit the time budget on " << res.partial_probing << " instances\n";
  if (res.table.size() == 0) {
    std::cerr << "error: no instance could be processed\n";
    if (!a.report.empty()) atomic_write(a.report, rep);
    return kFatal;
  }
  atomic_write(a.out, format_metadata(res.table));
  if (!a.report.empty()) atomic_write(a.report, rep);
  info(g, "wrote " + std::to_string(res.table.size()) + " rows to " + a.out);
  return kOk;
}

// --- pipeline --------------------------------------------------------------

int cmd_pipeline(const Global& g, const std::string& metadata, const std::string& config, const std::string& out) {
  PipelineConfig cfg = load_pipeline_config(config);
  if (g.seed_given) cfg.seed = g.seed;
  cfg.jobs = g.jobs;
  const auto table = read_metadata_file(metadata);
  const auto res = run_pipeline(table, cfg);
  for (const auto& l : res.log) std::cerr << l << "\n";
  write_pipeline_outputs(res, out);
  return res.excluded.empty() ? kOk : kPartial;
}

// --- project ---------------------------------------------------------------

struct ProjectArgs {
  std::string metadata, model, out, fit_transform, save_model, report;
  bool builtin = false;
};

int cmd_project(const Global& g, const ProjectArgs& a) {
  if (a.builtin == !a.model.empty()) {
    std::cerr << "error: give exactly one of --model or --builtin\n";
    return kFatal;
  }
  ProjectionModel model = a.builtin ? builtin_paper_model() : load_model(a.model);
  for (const auto& n : unknown_feature_names(model))
    std::cerr << "warning: model feature " << n << " is not produced by extract\n";
  if (!a.fit_transform.empty()) {
    model = with_fitted_transform(model, read_metadata_file(a.fit_transform), PrelimConfig{});
    info(g, "fitted transform on " + a.fit_transform);
  }
  if (!a.save_model.empty()) save_model(model, a.save_model);
  const auto table = read_metadata_file(a.metadata);
  const auto res = project_batch(model, table, g.jobs);
  for (const auto& e : res.excluded) {
    std::cerr << "excluded " << e.instance << ": missing";
    for (const auto& m : e.missing) std::cerr << " " << m;
    std::cerr << "\n";
  }
  atomic_write(a.out, format_coordinates(res.instances, res.z));
  if (!a.report.empty()) atomic_write(a.report, exclusion_report(res.excluded));
  return res.excluded.empty() ? kOk : kPartial;
}

// --- pi --------------------------------------------------------------------

int cmd_pi(const Global& g, const std::string& manifest, const std::string& out, const std::string& wide) {
  std::ifstream in(manifest);
  if (!in) throw Error("cannot open " + manifest);
  const auto entries = read_manifest(in, fs::path(manifest).parent_path());
  if (entries.empty()) {
    std::cerr << "error: manifest has no entries\n";
    return kFatal;
  }
  std::string table = csv_line({"instance", "algorithm", "pi", "error"});
  std::vector<std::string> instances, algorithms;
  std::map<std::pair<std::string, std::string>, double> values;
  std::size_t failed = 0;
  for (const auto& e : entries) {
    try {
      Trajectory t{read_trajectory_file(e.path), e.time_limit, e.bks};
      const double pi = primal_integral(t);
      table += csv_line({e.instance, e.algorithm, format_double(pi), ""});
      values[{e.instance, e.algorithm}] = pi;
    } catch (const std::exception& ex) {
      ++failed;
      std::cerr << "failed: " << e.instance << "/" << e.algorithm << ": " << ex.what() << "\n";
      table += csv_line({e.instance, e.algorithm, "", ex.what()});
    }
    if (std::find(instances.begin(), instances.end(), e.instance) == instances.end()) instances.push_back(e.instance);
    if (std::find(algorithms.begin(), algorithms.end(), e.algorithm) == algorithms.end())
      algorithms.push_back(e.algorithm);
  }
  atomic_write(out, table);
  if (!wide.empty()) {
    std::vector<std::string> header{"Instances"};
    for (const auto& a : algorithms) header.push_back("algo_" + a);
    std::string w = csv_line(header);
    for (const auto& i : instances) {
      std::vector<std::string> row{i};
      for (const auto& a : algorithms) {
        auto it = values.find({i, a});
        row.push_back(it == values.end() ? "" : format_double(it->second));
      }
      w += csv_line(row);
    }
    atomic_write(wide, w);
  }
  info(g, "computed " + std::to_string(entries.size() - failed) + " of " + std::to_string(entries.size()));
  if (failed == entries.size()) return kFatal;
  return failed ? kPartial : kOk;
}

// --- plot ------------------------------------------------------------------

struct PlotArgs {
  std::string coords, out, metadata, color_by = "source", column, title;
  double lo = 0.0, hi = 1.0;
};

struct Coords {
  std::vector<std::string> names;
  std::vector<double> z1, z2;
};

Coords read_coordinates(const std::string& path) {
  const auto t = read_csv_file(path);
  const int ci = t.column("Instances"), c1 = t.column("Z1"), c2 = t.column("Z2");
  if (ci < 0 || c1 < 0 || c2 < 0) throw Error(path + ": expected columns Instances,Z1,Z2");
  Coords c;
  for (const auto& r : t.rows) {
    c.names.push_back(r[ci]);
    c.z1.push_back(std::stod(r[c1]));
    c.z2.push_back(std::stod(r[c2]));
  }
  return c;
}

int cmd_plot(const Global& g, const PlotArgs& a) {
  const Coords c = read_coordinates(a.coords);
  PlotSpec spec;
  spec.title = a.title;
  spec.value_lo = a.lo;
  spec.value_hi = a.hi;
  if (a.color_by == "source") {
    spec.color_by = ColorBy::SourceSet;
  } else if (a.color_by == "performance") {
    spec.color_by = ColorBy::Performance;
  } else if (a.color_by == "membership") {
    spec.color_by = ColorBy::Membership;
  } else {
    throw Error("--color-by must be source, performance or membership");
  }

  MetadataTable meta;
  std::map<std::string, std::size_t> row_of;
  if (!a.metadata.empty()) {
    meta = read_metadata_file(a.metadata);
    for (std::size_t r = 0; r < meta.size(); ++r) row_of[meta.instances[r]] = r;
  }
  if (spec.color_by != ColorBy::SourceSet && (a.metadata.empty() || a.column.empty()))
    throw Error("--color-by " + a.color_by + " needs --metadata and --column");

  int algo = -1, attr = -1, feat = -1;
  if (spec.color_by == ColorBy::Performance) {
    algo = meta.algorithm_index(a.column);
    if (algo < 0) feat = meta.feature_index(a.column);
    if (algo < 0 && feat < 0) throw Error("no performance column '" + a.column + "' in " + a.metadata);
    spec.value_label = a.column;
  } else if (spec.color_by == ColorBy::Membership) {
    attr = meta.attribute_index(a.column);
    if (attr < 0) throw Error("no attribute column '" + a.column + "' in " + a.metadata);
  }

  std::vector<PlotPoint> pts;
  std::vector<std::string> unmatched;
  for (std::size_t i = 0; i < c.names.size(); ++i) {
    PlotPoint p{c.names[i], c.z1[i], c.z2[i], {}, 0.0};
    auto it = row_of.find(p.name);
    if (spec.color_by == ColorBy::SourceSet) {
      p.category = it != row_of.end() ? meta.sources[it->second] : source_from_name(p.name);
    } else if (it == row_of.end()) {
      unmatched.push_back(p.name);
      continue;
    } else if (spec.color_by == ColorBy::Performance) {
      const auto r = static_cast<Eigen::Index>(it->second);
      p.value = algo >= 0 ? meta.performance(r, algo) : meta.features(r, feat);
      if (!std::isfinite(p.value)) {
        unmatched.push_back(p.name);
        continue;
      }
    } else {
      p.category = meta.attributes[it->second][static_cast<std::size_t>(attr)];
    }
    pts.push_back(std::move(p));
  }
  if (!unmatched.empty()) {
    std::string msg = "no " + a.column + " value for:";
    for (const auto& n : unmatched) msg += " " + n;
    throw Error(msg);
  }
  atomic_write(a.out, render_scatter_svg(pts, spec));
  info(g, "wrote " + a.out);
  return kOk;
}

// --- correlate -------------------------------------------------------------

int cmd_correlate(const Global&, const std::string& coords, const std::string& metadata, const std::string& attribute) {
  const Coords c = read_coordinates(coords);
  std::map<std::string, double> value;
  if (attribute == "Z1" || attribute == "Z2") {
    for (std::size_t i = 0; i < c.names.size(); ++i) value[c.names[i]] = attribute == "Z1" ? c.z1[i] : c.z2[i];
  } else {
    const auto meta = read_metadata_file(metadata);
    const int at = meta.attribute_index(attribute), fe = meta.feature_index(attribute),
              al = meta.algorithm_index(attribute);
    if (at < 0 && fe < 0 && al < 0) throw Error("no column '" + attribute + "' in " + metadata);
    for (std::size_t r = 0; r < meta.size(); ++r) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (at >= 0) {
        try {
          v = std::stod(meta.attributes[r][static_cast<std::size_t>(at)]);
        } catch (const std::exception&) {
        }
      } else if (fe >= 0) {
        v = meta.features(static_cast<Eigen::Index>(r), fe);
      } else {
        v = meta.performance(static_cast<Eigen::Index>(r), al);
      }
      if (std::isfinite(v)) value[meta.instances[r]] = v;
    }
  }
  std::vector<double> x, z1, z2;
  for (std::size_t i = 0; i < c.names.size(); ++i) {
    auto it = value.find(c.names[i]);
    if (it == value.end()) continue;
    x.push_back(it->second);
    z1.push_back(c.z1[i]);
    z2.push_back(c.z2[i]);
  }
  if (x.size() < 2) throw Error("fewer than 2 instances join on '" + attribute + "'");
  const auto s = summarize(x);
  if (s.sd == 0.0) std::cerr << "warning: attribute " << attribute << " is constant; correlations reported as 0\n";
  std::cout << csv_line({"attribute", "n", "r_Z1", "r_Z2"})
            << csv_line({attribute, std::to_string(x.size()), format_double(pearson(x, z1)), format_double(pearson(x, z2))});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instance space analysis for capacitated vehicle routing"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for every random stream");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", g.verbose, "Progress messages on stderr");

  ExtractArgs ea;
  auto* ex = app.add_subcommand("extract", "Compute instance features for a directory of instance files");
  ex->add_option("dir", ea.dir, "Directory of .vrp/.tsp files")->required();
  ex->add_option("-o,--out", ea.out, "Metadata CSV to write")->required();
  ex->add_option("--report", ea.report, "CSV of per-file failures");
  ex->add_option("--restarts", ea.restarts, "Probing restarts")->capture_default_str();
  ex->add_option("--time-budget", ea.budget, "Probing time budget per instance in seconds, 0 for none")
      ->capture_default_str();

  std::string pm, pc, po;
  auto* pl = app.add_subcommand("pipeline", "Fit feature selection and projection on a metadata table");
  pl->add_option("metadata", pm, "Metadata CSV")->required();
  pl->add_option("-c,--config", pc, "Pipeline config file")->required();
  pl->add_option("-o,--out", po, "Output directory")->required();

  ProjectArgs pa;
  auto* pr = app.add_subcommand("project", "Project instances with a fitted or the built-in model");
  pr->add_option("metadata", pa.metadata, "Metadata CSV")->required();
  pr->add_option("--model", pa.model, "model.json");
  pr->add_flag("--builtin", pa.builtin, "Use the published 23-feature projection");
  pr->add_option("--fit-transform", pa.fit_transform, "Reference metadata CSV to fit the feature transform on");
  pr->add_option("--save-model", pa.save_model, "Write the model actually used");
  pr->add_option("--report", pa.report, "CSV of excluded rows");
  pr->add_option("-o,--out", pa.out, "coordinates.csv to write")->required();

  std::string pim, pio, piw;
  auto* pi = app.add_subcommand("pi", "Primal integrals from a trajectory manifest");
  pi->add_option("manifest", pim, "Manifest CSV instance,algorithm,bks,timelimit,path")->required();
  pi->add_option("-o,--out", pio, "PI table CSV")->required();
  pi->add_option("--wide", piw, "Also write Instances,algo_<name>... for joining into metadata");

  PlotArgs pta;
  auto* pt = app.add_subcommand("plot", "Scatter plot of coordinates as SVG");
  pt->add_option("coordinates", pta.coords, "coordinates.csv")->required();
  pt->add_option("-o,--out", pta.out, "SVG to write")->required();
  pt->add_option("--color-by", pta.color_by, "source, performance or membership")->capture_default_str();
  pt->add_option("--metadata", pta.metadata, "Metadata CSV to join on");
  pt->add_option("--column", pta.column, "Algorithm (performance) or attribute (membership) column");
  pt->add_option("--title", pta.title, "Plot title");
  pt->add_option("--lo", pta.lo, "Performance value drawn blue")->capture_default_str();
  pt->add_option("--hi", pta.hi, "Performance value drawn red")->capture_default_str();

  std::string cc, cm, ca;
  auto* co = app.add_subcommand("correlate", "Pearson correlation of an attribute with Z1 and Z2");
  co->add_option("coordinates", cc, "coordinates.csv")->required();
  co->add_option("metadata", cm, "Metadata CSV")->required();
  co->add_option("-a,--attribute", ca, "Attribute, feature or algorithm column")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kFatal;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*ex) return cmd_extract(g, ea);
    if (*pl) return cmd_pipeline(g, pm, pc, po);
    if (*pr) return cmd_project(g, pa);
    if (*pi) return cmd_pi(g, pim, pio, piw);
    if (*pt) return cmd_plot(g, pta);
    if (*co) return cmd_correlate(g, cc, cm, ca);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFatal;
  }
  return kFatal;
}
