#include "cvrpisa/performance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "cvrpisa/csv.hpp"
#include "cvrpisa/error.hpp"

namespace cvrpisa {

namespace {

double parse_real(const std::string& s, const std::string& what) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw Error(what + ": empty value");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data() + b, s.data() + e + 1, v);
  if (ec != std::errc() || ptr != s.data() + e + 1 || !std::isfinite(v))
    throw Error(what + ": not a number: '" + s + "'");
  return v;
}

int require_column(const CsvTable& t, const std::string& name) {
  const int c = t.column(name);
  if (c < 0) throw Error("csv: missing column '" + name + "'");
  return c;
}

}  // namespace

void validate(const Trajectory& traj) {
  if (!(traj.time_limit > 0.0) || !std::isfinite(traj.time_limit)) throw Error("trajectory: time limit must be positive");
  if (!std::isfinite(traj.bks)) throw Error("trajectory: bks must be finite");
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    const auto& p = traj.points[i];
    if (!std::isfinite(p.t) || !std::isfinite(p.value)) throw Error("trajectory: non-finite point");
    if (p.t < 0.0 || p.t > traj.time_limit) throw Error("trajectory: time outside [0, T]");
    if (i > 0) {
      if (!(p.t > traj.points[i - 1].t)) throw Error("trajectory: times must strictly increase");
      if (p.value > traj.points[i - 1].value) throw Error("trajectory: incumbent values must not increase");
    }
  }
}

double primal_gap(std::optional<double> value, double bks) {
  if (!value) return 1.0;
  const double v = *value;
  if (v == 0.0 && bks == 0.0) return 0.0;
  if (v * bks < 0.0) return 1.0;
  return std::min(1.0, std::abs(v - bks) / std::max(std::abs(v), std::abs(bks)));
}

double primal_integral(const Trajectory& traj) {
  validate(traj);
  const auto& pts = traj.points;
  if (pts.empty()) return 1.0;
  double area = pts.front().t;  // gap 1 before the first incumbent
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double end = i + 1 < pts.size() ? pts[i + 1].t : traj.time_limit;
    area += primal_gap(pts[i].value, traj.bks) * (end - pts[i].t);
  }
  return std::clamp(area / traj.time_limit, 0.0, 1.0);
}

LabelMatrix label_good(const Eigen::MatrixXd& perf, double epsilon, bool maximize) {
  if (!(epsilon > 0.0)) throw Error("label_good: epsilon must be positive");
  if (maximize) return (perf.array() >= epsilon);
  return (perf.array() <= epsilon);
}

std::vector<Incumbent> read_trajectory_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  const int ct = require_column(t, "t");
  const int cv = require_column(t, "value");
  std::vector<Incumbent> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back({parse_real(row[ct], "t"), parse_real(row[cv], "value")});
  return out;
}

std::vector<Incumbent> read_trajectory_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trajectory " + path.string());
  return read_trajectory_csv(in);
}

std::vector<ManifestEntry> read_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  const CsvTable t = read_csv(in);
  const int ci = require_column(t, "instance");
  const int ca = require_column(t, "algorithm");
  const int cb = require_column(t, "bks");
  const int ct = require_column(t, "timelimit");
  const int cp = require_column(t, "path");
  std::vector<ManifestEntry> out;
  for (const auto& row : t.rows) {
    ManifestEntry e;
    e.instance = row[ci];
    e.algorithm = row[ca];
    e.bks = parse_real(row[cb], "bks");
    e.time_limit = parse_real(row[ct], "timelimit");
    e.path = row[cp];
    if (e.path.is_relative() && !base_dir.empty()) e.path = base_dir / e.path;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace cvrpisa
