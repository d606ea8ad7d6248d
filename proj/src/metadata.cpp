#include "cvrpisa/metadata.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "cvrpisa/csv.hpp"
#include "cvrpisa/error.hpp"

namespace cvrpisa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_cell(const std::string& raw, std::size_t row, const std::string& col) {
  const std::size_t b = raw.find_first_not_of(" \t");
  if (b == std::string::npos) return kNaN;
  const std::size_t e = raw.find_last_not_of(" \t");
  const std::string s = raw.substr(b, e - b + 1);
  if (s == "NaN" || s == "nan" || s == "NA" || s == "-nan") return kNaN;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("metadata row " + std::to_string(row + 1) + ", column " + col + ": not a number: '" + raw + "'");
  return std::isfinite(v) ? v : kNaN;
}

int index_of(const std::vector<std::string>& v, const std::string& name) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == name) return static_cast<int>(i);
  return -1;
}

std::string format_cell(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

}  // namespace

int MetadataTable::feature_index(const std::string& name) const { return index_of(feature_names, name); }
int MetadataTable::algorithm_index(const std::string& name) const { return index_of(algorithm_names, name); }
int MetadataTable::attribute_index(const std::string& name) const { return index_of(attribute_names, name); }

MetadataTable MetadataTable::subset(const std::vector<std::size_t>& rows) const {
  MetadataTable out;
  out.feature_names = feature_names;
  out.algorithm_names = algorithm_names;
  out.attribute_names = attribute_names;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.performance.resize(static_cast<Eigen::Index>(rows.size()), performance.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto r = rows[k];
    out.instances.push_back(instances[r]);
    out.sources.push_back(sources[r]);
    out.attributes.push_back(attributes[r]);
    out.features.row(static_cast<Eigen::Index>(k)) = features.row(static_cast<Eigen::Index>(r));
    out.performance.row(static_cast<Eigen::Index>(k)) = performance.row(static_cast<Eigen::Index>(r));
  }
  return out;
}

std::string source_from_name(const std::string& name) {
  const auto p = name.find('-');
  return p == std::string::npos ? name : name.substr(0, p);
}

MetadataTable read_metadata(std::istream& in) {
  const CsvTable csv = read_csv(in);
  const int ci = csv.column("Instances");
  if (ci < 0) throw Error("metadata: missing column 'Instances'");
  const int cs = csv.column("Source");

  MetadataTable t;
  std::vector<int> fcols, acols, xcols;
  for (std::size_t c = 0; c < csv.header.size(); ++c) {
    const auto& h = csv.header[c];
    if (static_cast<int>(c) == ci || static_cast<int>(c) == cs) continue;
    if (h.rfind("feature_", 0) == 0) {
      t.feature_names.push_back(h.substr(8));
      fcols.push_back(static_cast<int>(c));
    } else if (h.rfind("algo_", 0) == 0) {
      t.algorithm_names.push_back(h.substr(5));
      acols.push_back(static_cast<int>(c));
    } else {
      t.attribute_names.push_back(h);
      xcols.push_back(static_cast<int>(c));
    }
  }

  const auto n = static_cast<Eigen::Index>(csv.rows.size());
  t.features.resize(n, static_cast<Eigen::Index>(fcols.size()));
  t.performance.resize(n, static_cast<Eigen::Index>(acols.size()));
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    const auto ri = static_cast<Eigen::Index>(r);
    t.instances.push_back(row[ci]);
    std::string src = cs >= 0 ? row[cs] : std::string();
    t.sources.push_back(src.empty() ? source_from_name(row[ci]) : src);
    for (std::size_t j = 0; j < fcols.size(); ++j)
      t.features(ri, static_cast<Eigen::Index>(j)) = parse_cell(row[fcols[j]], r, csv.header[fcols[j]]);
    for (std::size_t j = 0; j < acols.size(); ++j)
      t.performance(ri, static_cast<Eigen::Index>(j)) = parse_cell(row[acols[j]], r, csv.header[acols[j]]);
    std::vector<std::string> attrs;
    for (int c : xcols) attrs.push_back(row[c]);
    t.attributes.push_back(std::move(attrs));
  }
  return t;
}

MetadataTable read_metadata_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_metadata(in);
}

std::string format_metadata(const MetadataTable& t) {
  std::vector<std::string> header{"Instances", "Source"};
  for (const auto& a : t.attribute_names) header.push_back(a);
  for (const auto& f : t.feature_names) header.push_back("feature_" + f);
  for (const auto& a : t.algorithm_names) header.push_back("algo_" + a);
  std::string out = csv_line(header);
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    std::vector<std::string> row{t.instances[r], t.sources[r]};
    for (std::size_t j = 0; j < t.attribute_names.size(); ++j) row.push_back(t.attributes[r][j]);
    for (Eigen::Index j = 0; j < t.features.cols(); ++j) row.push_back(format_cell(t.features(ri, j)));
    for (Eigen::Index j = 0; j < t.performance.cols(); ++j) row.push_back(format_cell(t.performance(ri, j)));
    out += csv_line(row);
  }
  return out;
}

}  // namespace cvrpisa
