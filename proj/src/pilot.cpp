#include "cvrpisa/pilot.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "cvrpisa/error.hpp"
#include "cvrpisa/random.hpp"

namespace cvrpisa {

namespace {

constexpr double kRankTol = 1e-10;

struct Layout {
  Eigen::Index k, m;  // features, algorithms
  Eigen::Index size() const { return 4 * k + 2 * m; }
};

Eigen::VectorXd pack(const Layout& l, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c) {
  Eigen::VectorXd v(l.size());
  v << Eigen::Map<const Eigen::VectorXd>(a.data(), a.size()), Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()),
      Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
  return v;
}

void unpack(const Layout& l, const Eigen::VectorXd& v, Eigen::MatrixXd& a, Eigen::MatrixXd& b, Eigen::MatrixXd& c) {
  a = Eigen::Map<const Eigen::MatrixXd>(v.data(), 2, l.k);
  b = Eigen::Map<const Eigen::MatrixXd>(v.data() + 2 * l.k, l.k, 2);
  c = Eigen::Map<const Eigen::MatrixXd>(v.data() + 4 * l.k, l.m, 2);
}

double objective_and_gradient(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const Layout& l,
                              const Eigen::VectorXd& v, Eigen::VectorXd& grad) {
  Eigen::MatrixXd a, b, c;
  unpack(l, v, a, b, c);
  const auto g = pilot_gradient(f, y, a, b, c);
  grad = pack(l, g.a, g.b, g.c);
  return pilot_objective(f, y, a, b, c);
}

// BFGS with Armijo backtracking; the inverse-Hessian update is skipped when
// the curvature condition fails.
double bfgs(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const Layout& l, Eigen::VectorXd& x) {
  const Eigen::Index p = l.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(p, p);
  Eigen::VectorXd g;
  double fx = objective_and_gradient(f, y, l, x, g);
  const double g0 = std::max(1.0, g.cwiseAbs().maxCoeff());
  h /= g0;
  Eigen::VectorXd gn;
  for (int iter = 0; iter < 20000; ++iter) {
    if (g.cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, fx)) break;
    Eigen::VectorXd d = -h * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      h = Eigen::MatrixXd::Identity(p, p) / g0;
      d = -h * g;
      slope = g.dot(d);
    }
    double step = 1.0;
    Eigen::VectorXd xn;
    double fn = fx;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * d;
      fn = objective_and_gradient(f, y, l, xn, gn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd s = xn - x;
    const Eigen::VectorXd yk = gn - g;
    const double sy = s.dot(yk);
    if (sy > 1e-12 * s.norm() * yk.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h * yk;
      h += ((sy + yk.dot(hy)) * rho * rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
    }
    const double prev = fx;
    x = xn;
    g = gn;
    fx = fn;
    if (prev - fx <= 1e-15 * std::max(1.0, std::abs(fx)) && g.cwiseAbs().maxCoeff() <= 1e-7 * std::max(1.0, fx))
      break;
  }
  return fx;
}

void check_rank(const Eigen::MatrixXd& f) {
  if (f.cols() < 2 || f.rows() < 2) throw IllConditioned("PILOT needs at least 2 features and 2 instances");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(f);
  const auto& s = svd.singularValues();
  if (!(s[1] > kRankTol * std::max(1.0, s[0]))) throw IllConditioned("feature matrix has rank below 2");
}

// Reduced-rank regression of w = [f y] on f: the best rank-2 fit lies in the
// column space of f, so project w onto it and keep its top two right
// singular directions.
PilotResult analytic(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y) {
  const Eigen::Index k = f.cols();
  Eigen::MatrixXd w(f.rows(), k + y.cols());
  w << f, y;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(f);
  const Eigen::MatrixXd coef = cod.solve(w);  // K x (K + m), least squares
  const Eigen::MatrixXd fitted = f * coef;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(fitted, Eigen::ComputeThinV);
  Eigen::MatrixXd v2 = svd.matrixV().leftCols(2);
  for (Eigen::Index j = 0; j < 2; ++j) {
    Eigen::Index arg = 0;
    v2.col(j).cwiseAbs().maxCoeff(&arg);
    if (v2(arg, j) < 0.0) v2.col(j) *= -1.0;
  }
  PilotResult r;
  r.a = (coef * v2).transpose();
  r.b = v2.topRows(k);
  r.c = v2.bottomRows(y.cols());
  return r;
}

}  // namespace

double pilot_objective(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const Eigen::MatrixXd& a,
                       const Eigen::MatrixXd& b, const Eigen::MatrixXd& c) {
  const Eigen::MatrixXd zt = a * f.transpose();
  return (f.transpose() - b * zt).squaredNorm() + (y.transpose() - c * zt).squaredNorm();
}

PilotGradient pilot_gradient(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const Eigen::MatrixXd& a,
                             const Eigen::MatrixXd& b, const Eigen::MatrixXd& c) {
  const Eigen::MatrixXd zt = a * f.transpose();
  const Eigen::MatrixXd rf = f.transpose() - b * zt;
  const Eigen::MatrixXd ry = y.transpose() - c * zt;
  PilotGradient g;
  g.b = -2.0 * rf * zt.transpose();
  g.c = -2.0 * ry * zt.transpose();
  g.a = -2.0 * (b.transpose() * rf + c.transpose() * ry) * f;
  return g;
}

double pilot_stationarity(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const PilotResult& r) {
  const Layout l{r.a.cols(), r.c.rows()};
  const Eigen::VectorXd v = pack(l, r.a, r.b, r.c);
  const double obj = pilot_objective(f, y, r.a, r.b, r.c);
  double worst = 0.0;
  Eigen::MatrixXd a, b, c;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(v[i]));
    Eigen::VectorXd vp = v, vm = v;
    vp[i] += h;
    vm[i] -= h;
    unpack(l, vp, a, b, c);
    const double fp = pilot_objective(f, y, a, b, c);
    unpack(l, vm, a, b, c);
    const double fm = pilot_objective(f, y, a, b, c);
    worst = std::max(worst, std::abs(fp - fm) / (2.0 * h));
  }
  return worst / std::max(1.0, obj);
}

PilotResult pilot(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, const PilotConfig& cfg) {
  if (f.rows() != y.rows()) throw Error("PILOT: feature and performance row counts differ");
  if (!f.allFinite() || !y.allFinite()) throw Error("PILOT: input contains missing values");
  check_rank(f);

  PilotResult best;
  if (!cfg.numeric) {
    best = analytic(f, y);
  } else {
    const Layout l{f.cols(), y.cols()};
    const std::size_t tries = std::max<std::size_t>(cfg.ntry, 1);
    std::vector<Eigen::VectorXd> sol(tries);
    std::vector<double> obj(tries, std::numeric_limits<double>::infinity());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t t = next++; t < tries; t = next++) {
        std::mt19937_64 rng(derive_seed(cfg.seed, t));
        Eigen::VectorXd x(l.size());
        for (auto& e : x) e = 2.0 * uniform01(rng) - 1.0;
        obj[t] = bfgs(f, y, l, x);
        sol[t] = std::move(x);
      }
    };
    const std::size_t jobs = std::min(std::max<std::size_t>(cfg.jobs, 1), tries);
    if (jobs <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    std::size_t arg = 0;
    for (std::size_t t = 1; t < tries; ++t)
      if (obj[t] < obj[arg]) arg = t;
    unpack(l, sol[arg], best.a, best.b, best.c);
    best.restart_objectives = obj;
  }
  best.z = f * best.a.transpose();
  best.objective = pilot_objective(f, y, best.a, best.b, best.c);
  if (!std::isfinite(best.objective)) throw IllConditioned("PILOT objective is not finite");
  return best;
}

}  // namespace cvrpisa
