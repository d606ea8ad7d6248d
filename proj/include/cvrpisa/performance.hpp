#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cvrpisa {

struct Incumbent {
  double t = 0.0;
  double value = 0.0;
};

// Incumbent history of one solver run. Times strictly increase within
// [0, time_limit]; values never increase.
struct Trajectory {
  std::vector<Incumbent> points;
  double time_limit = 0.0;
  double bks = 0.0;
};

// Throws Error if the trajectory breaks its invariants.
void validate(const Trajectory& traj);

// Scale-free gap in [0, 1]; a missing incumbent or opposite signs give 1.
double primal_gap(std::optional<double> value, double bks);

// Time-averaged primal gap over [0, T]. Gap is 1 before the first incumbent;
// the last incumbent holds until T. Empty trajectories give 1.
double primal_integral(const Trajectory& traj);

using LabelMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Minimization: good iff y <= epsilon. Maximization: good iff y >= epsilon.
LabelMatrix label_good(const Eigen::MatrixXd& perf, double epsilon, bool maximize);

// Trajectory CSV with header `t,value`.
std::vector<Incumbent> read_trajectory_csv(std::istream& in);
std::vector<Incumbent> read_trajectory_file(const std::filesystem::path& path);

struct ManifestEntry {
  std::string instance;
  std::string algorithm;
  double bks = 0.0;
  double time_limit = 0.0;
  std::filesystem::path path;
};

// Manifest CSV `instance,algorithm,bks,timelimit,path`. Relative paths are
// resolved against `base_dir`.
std::vector<ManifestEntry> read_manifest(std::istream& in, const std::filesystem::path& base_dir = {});

}  // namespace cvrpisa
