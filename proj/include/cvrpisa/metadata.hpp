#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cvrpisa {

// Instances x (features, algorithm performance). Missing cells hold NaN.
struct MetadataTable {
  std::vector<std::string> instances;
  std::vector<std::string> sources;
  std::vector<std::string> feature_names;
  std::vector<std::string> algorithm_names;
  Eigen::MatrixXd features;     // n x d
  Eigen::MatrixXd performance;  // n x a
  // Columns that are neither features nor algorithms, kept verbatim.
  std::vector<std::string> attribute_names;
  std::vector<std::vector<std::string>> attributes;  // n rows x attribute_names

  std::size_t size() const { return instances.size(); }
  int feature_index(const std::string& name) const;
  int algorithm_index(const std::string& name) const;
  int attribute_index(const std::string& name) const;

  // Rows restricted to `rows`, in the given order.
  MetadataTable subset(const std::vector<std::size_t>& rows) const;
};

// Source tag derived from an instance name: the prefix before the first '-'.
std::string source_from_name(const std::string& name);

// Header `Instances,Source,feature_<name>...,algo_<name>...`; other columns
// are kept as attributes. Empty, "NaN" or "NA" cells read as missing. A
// missing or empty Source falls back to source_from_name.
MetadataTable read_metadata(std::istream& in);
MetadataTable read_metadata_file(const std::filesystem::path& path);

// Missing cells are written empty. Attributes follow Source.
std::string format_metadata(const MetadataTable& table);

}  // namespace cvrpisa
