#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cvrpisa/features.hpp"
#include "cvrpisa/metadata.hpp"

namespace cvrpisa {

struct ExtractFailure {
  std::filesystem::path path;
  std::string message;
};

struct ExtractOutcome {
  MetadataTable table;  // catalog feature columns plus an n_customers attribute
  std::vector<ExtractFailure> failures;
  std::size_t partial_probing = 0;  // instances whose probing hit the time budget
};

// Instance files (.vrp, .tsp) directly inside `dir`, sorted by file name.
std::vector<std::filesystem::path> instance_files(const std::filesystem::path& dir);

// Extracts features for each file on up to `jobs` threads. Row order follows
// `files`; a failing file is reported and skipped.
ExtractOutcome extract_files(const std::vector<std::filesystem::path>& files, const FeatureConfig& cfg,
                             std::uint64_t seed, std::size_t jobs = 1);

}  // namespace cvrpisa
