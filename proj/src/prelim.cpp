#include "cvrpisa/prelim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "cvrpisa/error.hpp"
#include "cvrpisa/stats.hpp"

namespace cvrpisa {

namespace {

constexpr double kLambdaLo = -5.0;
constexpr double kLambdaHi = 5.0;

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

double sample_sd(const Eigen::VectorXd& v) {
  if (v.size() < 2) return 0.0;
  const double m = v.mean();
  return std::sqrt((v.array() - m).square().sum() / static_cast<double>(v.size() - 1));
}

}  // namespace

double box_cox(double x, double lambda) {
  if (std::abs(lambda) < 1e-12) return std::log(x);
  return (std::pow(x, lambda) - 1.0) / lambda;
}

double box_cox_lambda(const Eigen::VectorXd& x) {
  const auto n = static_cast<double>(x.size());
  const double log_sum = x.array().log().sum();
  auto neg_llf = [&](double lambda) {
    Eigen::VectorXd y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = box_cox(x[i], lambda);
    const double var = (y.array() - y.mean()).square().sum() / n;
    if (!(var > 0.0) || !std::isfinite(var)) return std::numeric_limits<double>::infinity();
    return -((lambda - 1.0) * log_sum - 0.5 * n * std::log(var));
  };
  const auto r = boost::math::tools::brent_find_minima(neg_llf, kLambdaLo, kLambdaHi, 40);
  return r.first;
}

double ColumnTransform::apply(double x) const {
  if (clamp) x = std::clamp(x, lo, hi);
  if (power) x = box_cox(std::max(x - shift, 1.0), lambda);
  return sd > 0.0 ? (x - mean) / sd : 0.0;
}

ColumnTransform fit_column_transform(const Eigen::VectorXd& values, const PrelimConfig& cfg) {
  ColumnTransform t;
  Eigen::VectorXd x = values;
  if (cfg.bound && x.size() > 0) {
    const auto v = to_vec(x);
    const double med = quantile(v, 0.5);
    const double iqr = quantile(v, 0.75) - quantile(v, 0.25);
    t.clamp = true;
    t.lo = med - 5.0 * iqr;
    t.hi = med + 5.0 * iqr;
    for (auto& e : x) e = std::clamp(e, t.lo, t.hi);
  }
  if (!cfg.transform_enabled()) return t;

  t.power = true;
  t.shift = x.size() > 0 ? x.minCoeff() - 1.0 : 0.0;
  Eigen::VectorXd pos = x.array() - t.shift;
  if (pos.maxCoeff() > pos.minCoeff()) t.lambda = box_cox_lambda(pos);
  Eigen::VectorXd y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = box_cox(pos[i], t.lambda);
  t.mean = y.mean();
  const double sd = sample_sd(y);
  t.sd = sd > 0.0 && std::isfinite(sd) ? sd : 0.0;
  return t;
}

PrelimResult prelim(const Eigen::MatrixXd& features, const Eigen::MatrixXd& performance, const PrelimConfig& cfg,
                    const std::vector<std::string>& feature_names) {
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (features.rows() != performance.rows()) throw Error("prelim: feature and performance row counts differ");
  if (!features.allFinite() || !performance.allFinite()) throw Error("prelim: input contains missing values");

  PrelimResult res;
  res.good = label_good(performance, cfg.epsilon, cfg.maximize);

  auto name_of = [&](Eigen::Index j) {
    return static_cast<std::size_t>(j) < feature_names.size() ? feature_names[static_cast<std::size_t>(j)]
                                                             : "column " + std::to_string(j);
  };

  std::vector<Eigen::VectorXd> kept;
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    const Eigen::VectorXd col = features.col(j);
    ColumnTransform t = fit_column_transform(col, cfg);
    const bool constant = cfg.transform_enabled() ? t.sd == 0.0 : sample_sd(col) == 0.0 && col.size() > 1;
    if (constant || col.size() < 2) {
      res.warnings.push_back("feature " + name_of(j) + " is constant; dropped");
      continue;
    }
    Eigen::VectorXd out(col.size());
    for (Eigen::Index i = 0; i < col.size(); ++i) out[i] = t.apply(col[i]);
    res.kept_features.push_back(static_cast<std::size_t>(j));
    res.feature_transforms.push_back(t);
    kept.push_back(std::move(out));
  }
  res.features.resize(features.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) res.features.col(static_cast<Eigen::Index>(j)) = kept[j];

  res.performance.resize(performance.rows(), performance.cols());
  for (Eigen::Index j = 0; j < performance.cols(); ++j) {
    const Eigen::VectorXd col = performance.col(j);
    ColumnTransform t = fit_column_transform(col, cfg);
    if (cfg.transform_enabled() && t.sd == 0.0) {
      res.warnings.push_back("performance column " + std::to_string(j) + " is constant; centred only");
      t.sd = 1.0;
    }
    for (Eigen::Index i = 0; i < col.size(); ++i) res.performance(i, j) = t.apply(col[i]);
    res.performance_transforms.push_back(t);
  }
  return res;
}

}  // namespace cvrpisa
