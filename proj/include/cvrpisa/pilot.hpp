#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace cvrpisa {

struct PilotConfig {
  std::size_t ntry = 30;
  // Quasi-Newton restarts instead of the closed form.
  bool numeric = false;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct PilotResult {
  Eigen::MatrixXd a;  // 2 x K
  Eigen::MatrixXd b;  // K x 2
  Eigen::MatrixXd c;  // algorithms x 2
  Eigen::MatrixXd z;  // n x 2, z = f a^T
  double objective = 0.0;
  std::vector<double> restart_objectives;
};

// |f^T - b z^T|^2 + |y^T - c z^T|^2 with z = f a^T (Frobenius norms).
double pilot_objective(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const Eigen::MatrixXd& a,
                       const Eigen::MatrixXd& b, const Eigen::MatrixXd& c);

struct PilotGradient {
  Eigen::MatrixXd a, b, c;
};
PilotGradient pilot_gradient(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const Eigen::MatrixXd& a,
                             const Eigen::MatrixXd& b, const Eigen::MatrixXd& c);

// Max-norm of the central-difference gradient divided by max(1, objective).
double pilot_stationarity(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const PilotResult& r);

// f: n x K standardized features, y: n x algorithms standardized performance.
// Throws IllConditioned when f has rank below 2.
PilotResult pilot(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const PilotConfig& cfg);

}  // namespace cvrpisa
