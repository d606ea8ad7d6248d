#include "cvrpisa/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cvrpisa/error.hpp"
#include "cvrpisa/random.hpp"

namespace cvrpisa {

namespace {

double sign_to(const Eigen::VectorXd& e, const Eigen::VectorXd& c) { return e.dot(c) < 0.0 ? -1.0 : 1.0; }

// Mean of the given columns after aligning each with a common direction.
Eigen::VectorXd aligned_mean(const Eigen::MatrixXd& pts, const std::vector<std::size_t>& members) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(pts.rows());
  if (members.empty()) return c;
  Eigen::MatrixXd m(pts.rows(), static_cast<Eigen::Index>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts.col(members[i]);
  // Orient by the leading left singular vector, then average; a few Lloyd
  // steps settle the signs.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  c = svd.matrixU().col(0);
  for (int it = 0; it < 10; ++it) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(pts.rows());
    for (Eigen::Index i = 0; i < m.cols(); ++i) next += sign_to(m.col(i), c) * m.col(i);
    next /= static_cast<double>(m.cols());
    if ((next - c).norm() < 1e-15) break;
    c = next;
  }
  return c;
}

struct Run {
  std::vector<std::size_t> assignment;
  Eigen::MatrixXd centroids;
  double inertia = std::numeric_limits<double>::infinity();
};

Eigen::MatrixXd plus_plus_init(const Eigen::MatrixXd& pts, std::size_t k, std::mt19937_64& rng) {
  const auto m = static_cast<std::size_t>(pts.cols());
  Eigen::MatrixXd cent(pts.rows(), static_cast<Eigen::Index>(k));
  std::size_t first = uniform_index(rng, m);
  cent.col(0) = pts.col(static_cast<Eigen::Index>(first));
  std::vector<double> d2(m);
  for (std::size_t i = 0; i < m; ++i) d2[i] = aligned_sq_distance(pts.col(static_cast<Eigen::Index>(i)), cent.col(0));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = 0;
    if (total > 0.0) {
      double r = uniform01(rng) * total;
      pick = m - 1;
      for (std::size_t i = 0; i < m; ++i) {
        r -= d2[i];
        if (r < 0.0) {
          pick = i;
          break;
        }
      }
      while (d2[pick] == 0.0 && pick > 0) --pick;
    } else {
      pick = uniform_index(rng, m);
    }
    cent.col(static_cast<Eigen::Index>(c)) = pts.col(static_cast<Eigen::Index>(pick));
    for (std::size_t i = 0; i < m; ++i)
      d2[i] = std::min(d2[i], aligned_sq_distance(pts.col(static_cast<Eigen::Index>(i)),
                                                  cent.col(static_cast<Eigen::Index>(c))));
  }
  return cent;
}

Run lloyd(const Eigen::MatrixXd& pts, Eigen::MatrixXd cent, std::size_t max_iter) {
  const auto m = static_cast<std::size_t>(pts.cols());
  const auto k = static_cast<std::size_t>(cent.cols());
  Run run;
  run.assignment.assign(m, k);
  std::vector<double> dist(m, 0.0);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = aligned_sq_distance(pts.col(static_cast<Eigen::Index>(i)), cent.col(static_cast<Eigen::Index>(c)));
        if (d < bd) {
          bd = d;
          best = c;
        }
      }
      dist[i] = bd;
      if (run.assignment[i] != best) {
        run.assignment[i] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::vector<std::size_t> count(k, 0);
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(pts.rows(), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < m; ++i) {
      const auto c = static_cast<Eigen::Index>(run.assignment[i]);
      next.col(c) += sign_to(pts.col(static_cast<Eigen::Index>(i)), cent.col(c)) * pts.col(static_cast<Eigen::Index>(i));
      ++count[run.assignment[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] > 0) {
        next.col(static_cast<Eigen::Index>(c)) /= static_cast<double>(count[c]);
        continue;
      }
      // Empty cluster: take over the point farthest from its centroid.
      const auto far = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
      next.col(static_cast<Eigen::Index>(c)) = pts.col(static_cast<Eigen::Index>(far));
      dist[far] = 0.0;
      run.assignment[far] = c;
    }
    cent = std::move(next);
  }
  run.inertia = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    run.inertia += aligned_sq_distance(pts.col(static_cast<Eigen::Index>(i)),
                                       cent.col(static_cast<Eigen::Index>(run.assignment[i])));
  run.centroids = std::move(cent);
  return run;
}

std::vector<std::vector<std::size_t>> members_of(const Clustering& c) {
  std::vector<std::vector<std::size_t>> out(c.k);
  for (std::size_t i = 0; i < c.assignment.size(); ++i) out[c.assignment[i]].push_back(i);
  return out;
}

}  // namespace

Eigen::MatrixXd correlation_embedding(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd e = x.rowwise() - x.colwise().mean();
  for (Eigen::Index j = 0; j < e.cols(); ++j) {
    const double nrm = e.col(j).norm();
    if (nrm > 0.0 && std::isfinite(nrm)) {
      e.col(j) /= nrm;
    } else {
      e.col(j).setZero();
    }
  }
  return e;
}

double aligned_sq_distance(const Eigen::VectorXd& e, const Eigen::VectorXd& c) {
  return std::max(0.0, e.squaredNorm() + c.squaredNorm() - 2.0 * std::abs(e.dot(c)));
}

Clustering sign_aligned_kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed, std::size_t n_init,
                               std::size_t max_iter) {
  const auto m = static_cast<std::size_t>(points.cols());
  if (k < 1 || k > m) throw Error("kmeans: k = " + std::to_string(k) + " outside [1, " + std::to_string(m) + "]");
  Run best;
  for (std::size_t init = 0; init < std::max<std::size_t>(n_init, 1); ++init) {
    std::mt19937_64 rng(derive_seed(seed, init));
    Run run = lloyd(points, plus_plus_init(points, k, rng), max_iter);
    if (run.inertia < best.inertia - 1e-12) best = std::move(run);
  }
  // Canonical labels: clusters numbered by their first member.
  std::vector<std::size_t> relabel(k, k);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (relabel[best.assignment[i]] == k) relabel[best.assignment[i]] = next++;
  Clustering out;
  out.k = k;
  out.inertia = best.inertia;
  out.centroids.resize(points.rows(), static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k; ++c)
    if (relabel[c] < k) out.centroids.col(static_cast<Eigen::Index>(relabel[c])) = best.centroids.col(static_cast<Eigen::Index>(c));
  out.assignment.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.assignment[i] = relabel[best.assignment[i]];
  return out;
}

ClusterQuality cluster_quality(const Eigen::MatrixXd& pts, const Clustering& c) {
  ClusterQuality q;
  q.k = c.k;
  const auto m = static_cast<std::size_t>(pts.cols());
  const auto members = members_of(c);
  if (c.k < 2 || c.k >= m) return q;

  Eigen::MatrixXd dist(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::sqrt(aligned_sq_distance(pts.col(static_cast<Eigen::Index>(i)), pts.col(static_cast<Eigen::Index>(j))));

  double sil = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto own = c.assignment[i];
    if (members[own].size() < 2) continue;  // singleton silhouette is 0
    double a = 0.0;
    for (auto j : members[own]) a += dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    a /= static_cast<double>(members[own].size() - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t o = 0; o < c.k; ++o) {
      if (o == own || members[o].empty()) continue;
      double s = 0.0;
      for (auto j : members[o]) s += dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      b = std::min(b, s / static_cast<double>(members[o].size()));
    }
    const double den = std::max(a, b);
    if (den > 0.0 && std::isfinite(b)) sil += (b - a) / den;
  }
  q.silhouette = sil / static_cast<double>(m);

  std::vector<Eigen::VectorXd> cent(c.k);
  std::vector<double> scatter(c.k, 0.0);
  double within = 0.0;
  for (std::size_t o = 0; o < c.k; ++o) {
    cent[o] = aligned_mean(pts, members[o]);
    for (auto j : members[o]) {
      const double d2 = aligned_sq_distance(pts.col(static_cast<Eigen::Index>(j)), cent[o]);
      scatter[o] += std::sqrt(d2);
      within += d2;
    }
    if (!members[o].empty()) scatter[o] /= static_cast<double>(members[o].size());
  }

  double db = 0.0;
  for (std::size_t o = 0; o < c.k; ++o) {
    double worst = 0.0;
    for (std::size_t p = 0; p < c.k; ++p) {
      if (p == o) continue;
      const double sep = std::sqrt(aligned_sq_distance(cent[o], cent[p]));
      const double r = sep > 0.0 ? (scatter[o] + scatter[p]) / sep : std::numeric_limits<double>::infinity();
      worst = std::max(worst, r);
    }
    db += worst;
  }
  q.davies_bouldin = db / static_cast<double>(c.k);

  std::vector<std::size_t> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  const Eigen::VectorXd g = aligned_mean(pts, all);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += aligned_sq_distance(pts.col(static_cast<Eigen::Index>(i)), g);
  const double between = std::max(0.0, total - within);
  q.calinski_harabasz = within > 0.0 ? (between / static_cast<double>(c.k - 1)) /
                                           (within / static_cast<double>(m - c.k))
                                     : std::numeric_limits<double>::infinity();
  return q;
}

}  // namespace cvrpisa
