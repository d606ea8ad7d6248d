#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "cvrpisa/metadata.hpp"
#include "cvrpisa/pilot.hpp"
#include "cvrpisa/prelim.hpp"
#include "cvrpisa/projection.hpp"
#include "cvrpisa/sifted.hpp"

namespace cvrpisa {

struct PipelineConfig {
  PrelimConfig prelim;
  std::size_t k = 2;
  bool k_auto = false;  // pick the silhouette-best K from the sweep
  std::size_t ntry = 30;
  bool numeric = false;
  std::uint64_t seed = 0;
  std::size_t budget = 10000;
  double corr_threshold = 0.5;
  bool corr_on_raw = false;  // correlate against raw rather than transformed performance
  std::size_t k_sweep_max = 30;
  ForestParams forest;
  std::size_t jobs = 1;

  // One line, every key, values as parsed.
  std::string describe() const;
};

// Flat `key = value` text; `#` starts a comment. Required keys: epsilon, k,
// ntry, phi_max, phi_bnd, phi_nrm. Unknown keys are errors.
PipelineConfig parse_pipeline_config(std::istream& in);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct PipelineResult {
  std::vector<std::string> instances;  // rows used for fitting
  std::vector<std::string> feature_names;  // after PRELIM, before the filter
  std::vector<std::string> algorithm_names;
  std::vector<Exclusion> excluded;  // rows left out, with the reason in `missing`
  PrelimResult prelim;
  CorrelationFilter correlation;
  std::vector<ClusterQuality> kcurve;
  std::size_t k = 0;
  Clustering clusters;  // over correlation.surviving
  Selection selection;  // indices into correlation.surviving
  std::vector<std::string> chosen_names;
  PilotResult pilot;
  ProjectionModel model;
  std::vector<std::string> log;
};

PipelineResult run_pipeline(const MetadataTable& table, const PipelineConfig& cfg);

// coordinates.csv, selection.csv, kmetrics.csv, model.json and pipeline.log,
// each written atomically.
void write_pipeline_outputs(const PipelineResult& result, const std::filesystem::path& dir);

}  // namespace cvrpisa
