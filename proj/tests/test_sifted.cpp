#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "cvrpisa/error.hpp"
#include "cvrpisa/sifted.hpp"

using namespace cvrpisa;

namespace {

double naive_pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double sab = 0, saa = 0, sbb = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return saa == 0 || sbb == 0 ? 0.0 : sab / std::sqrt(saa * sbb);
}

// Same partition up to relabeling.
bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  std::map<std::size_t, std::size_t> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ab.count(a[i]) && ab[a[i]] != b[i]) return false;
    if (ba.count(b[i]) && ba[b[i]] != a[i]) return false;
    ab[a[i]] = b[i];
    ba[b[i]] = a[i];
  }
  return true;
}

// Features built from `groups` latent signals; member j of group g is
// +-(signal_g + noise * e).
Eigen::MatrixXd grouped_features(std::mt19937_64& rng, std::size_t n, const std::vector<std::size_t>& sizes,
                                 double noise, std::vector<std::size_t>& truth) {
  std::normal_distribution<double> g;
  std::size_t cols = 0;
  for (auto s : sizes) cols += s;
  Eigen::MatrixXd f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  truth.clear();
  Eigen::Index c = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    Eigen::VectorXd base(static_cast<Eigen::Index>(n));
    for (auto& v : base) v = g(rng);
    for (std::size_t m = 0; m < sizes[k]; ++m, ++c) {
      const double sign = m % 2 ? -1.0 : 1.0;
      for (Eigen::Index i = 0; i < base.size(); ++i) f(i, c) = sign * (base[i] + noise * g(rng)) * (1.0 + m) + 3.0 * m;
      truth.push_back(k);
    }
  }
  return f;
}

// Brute-force silhouette under the 1 - |rho| geometry.
double naive_silhouette(const Eigen::MatrixXd& f, const std::vector<std::size_t>& label, std::size_t k) {
  const auto m = static_cast<std::size_t>(f.cols());
  auto dist = [&](std::size_t i, std::size_t j) {
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::abs(naive_pearson(f.col(static_cast<Eigen::Index>(i)),
                                                                       f.col(static_cast<Eigen::Index>(j)))))));
  };
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> sum(k, 0.0);
    std::vector<double> cnt(k, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      sum[label[j]] += dist(i, j);
      cnt[label[j]] += 1.0;
    }
    if (cnt[label[i]] == 0.0) continue;  // singleton scores 0
    const double a = sum[label[i]] / cnt[label[i]];
    double b = 1e300;
    for (std::size_t c = 0; c < k; ++c)
      if (c != label[i] && cnt[c] > 0) b = std::min(b, sum[c] / cnt[c]);
    total += std::max(a, b) > 0 ? (b - a) / std::max(a, b) : 0.0;
  }
  return total / static_cast<double>(m);
}

LabelMatrix column_labels(const std::vector<bool>& v) {
  LabelMatrix l(static_cast<Eigen::Index>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) l(static_cast<Eigen::Index>(i), 0) = v[i];
  return l;
}

}  // namespace

TEST_CASE("correlation filter examples") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  const Eigen::Index n = 200;
  Eigen::MatrixXd f(n, 4), y(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    f(i, 0) = g(rng);
    f(i, 1) = g(rng);
    f(i, 2) = g(rng);
    y(i, 0) = 0.9 * f(i, 2) + 0.1 * g(rng);
  }
  f.col(3) = y.col(0);
  const auto r = correlation_filter(f, y);
  CHECK(r.surviving == std::vector<std::size_t>{2, 3});
  CHECK(r.correlation(2, 0) > 0.9);
  CHECK(r.correlation(3, 0) == doctest::Approx(1.0));
  CHECK_FALSE(r.padded);
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(r.correlation(j, 0) == doctest::Approx(naive_pearson(f.col(j), y.col(0))));
}

TEST_CASE("correlation filter pads to min_keep with the strongest columns") {
  Eigen::MatrixXd f(5, 3), y(5, 1);
  f << 1, 5, 2, 2, 1, 2, 3, 4, 2, 4, 2, 2, 5, 3, 2;
  y << 1, 2, 3, 4, 5.5;
  const auto r = correlation_filter(f, y, 0.5, 2);
  CHECK(r.correlation(2, 0) == 0.0);  // zero variance
  CHECK(r.surviving.size() == 2);
  CHECK(std::count(r.surviving.begin(), r.surviving.end(), 0) == 1);
  CHECK(std::count(r.surviving.begin(), r.surviving.end(), 2) == 0);
  CHECK_THROWS_AS(correlation_filter(f.topRows(2), y.topRows(2)), Error);
}

TEST_CASE("aligned distance is 2 (1 - |rho|) between unit columns") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int c = 0; c < 200; ++c) {
    Eigen::MatrixXd x(15, 2);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    const auto e = correlation_embedding(x);
    const double rho = naive_pearson(x.col(0), x.col(1));
    CHECK(aligned_sq_distance(e.col(0), e.col(1)) == doctest::Approx(2.0 * (1.0 - std::abs(rho))));
  }
}

TEST_CASE("two perfectly correlated groups are recovered with K = 2") {
  std::mt19937_64 rng(3);
  std::vector<std::size_t> truth;
  const auto f = grouped_features(rng, 60, {3, 4}, 0.0, truth);
  const auto c = cluster_features(f, 2, 7);
  CHECK(same_partition(c.assignment, truth));
  CHECK(c.inertia == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("K equal to the feature count gives singletons") {
  std::mt19937_64 rng(4);
  std::vector<std::size_t> truth;
  const auto f = grouped_features(rng, 40, {2, 2, 2}, 0.3, truth);
  const auto c = cluster_features(f, 6, 1);
  std::set<std::size_t> labels(c.assignment.begin(), c.assignment.end());
  CHECK(labels.size() == 6);
}

TEST_CASE("clustering is a deterministic partition") {
  std::mt19937_64 rng(5);
  std::vector<std::size_t> truth;
  const auto f = grouped_features(rng, 50, {3, 3, 4}, 0.8, truth);
  for (std::size_t k = 1; k <= 10; ++k) {
    const auto a = cluster_features(f, k, 11);
    const auto b = cluster_features(f, k, 11);
    CHECK(a.assignment == b.assignment);
    REQUIRE(a.assignment.size() == 10);
    std::set<std::size_t> used(a.assignment.begin(), a.assignment.end());
    CHECK(used.size() == k);
    for (auto l : a.assignment) CHECK(l < k);
  }
  CHECK_THROWS(cluster_features(f, 11, 0));
  CHECK_THROWS(cluster_features(f, 0, 0));
}

TEST_CASE("three latent groups: silhouette peaks at K = 3") {
  std::mt19937_64 rng(6);
  std::vector<std::size_t> truth;
  const auto f = grouped_features(rng, 100, {4, 4, 4}, 0.3, truth);
  const auto sweep = k_sweep(f, 2, 10, 5);
  REQUIRE(sweep.size() == 9);
  const auto best = std::max_element(sweep.begin(), sweep.end(),
                                     [](const auto& a, const auto& b) { return a.silhouette < b.silhouette; });
  CHECK(best->k == 3);
  CHECK(same_partition(cluster_features(f, 3, 5).assignment, truth));
}

TEST_CASE("silhouette matches a brute-force computation") {
  std::mt19937_64 rng(7);
  for (int c = 0; c < 200; ++c) {
    std::vector<std::size_t> truth;
    const auto f = grouped_features(rng, 30, {2, 3, 2}, 0.5 + 0.01 * c, truth);
    const std::size_t k = 2 + static_cast<std::size_t>(c % 5);
    const auto cl = cluster_features(f, k, static_cast<std::uint64_t>(c));
    const auto q = cluster_quality(correlation_embedding(f), cl);
    CHECK(q.silhouette == doctest::Approx(naive_silhouette(f, cl.assignment, k)).epsilon(1e-9));
    CHECK(q.davies_bouldin >= 0.0);
    CHECK(q.calinski_harabasz >= 0.0);
  }
}

TEST_CASE("random forest: separable labels give near-zero OOB error") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd x(150, 2);
  std::vector<int> y(150);
  for (Eigen::Index i = 0; i < 150; ++i) {
    x(i, 0) = u(rng);
    x(i, 1) = u(rng);
    y[static_cast<std::size_t>(i)] = x(i, 0) + 0.5 * x(i, 1) > 0.1 ? 1 : 0;
  }
  RandomForest rf;
  rf.fit(x, y, {}, 3);
  CHECK(rf.oob_error() <= 0.1);
  int right = 0;
  for (Eigen::Index i = 0; i < 150; ++i) right += rf.predict(x.row(i)) == y[static_cast<std::size_t>(i)];
  CHECK(right >= 147);
  CHECK(forest_oob_error(x, y, {}, 3) == rf.oob_error());
}

TEST_CASE("random forest: pure-noise labels score near chance") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd x(300, 2);
  std::vector<int> y(300);
  for (Eigen::Index i = 0; i < 300; ++i) {
    x(i, 0) = u(rng);
    x(i, 1) = u(rng);
    y[static_cast<std::size_t>(i)] = u(rng) < 0.5;
  }
  const double e = forest_oob_error(x, y, {}, 1);
  CHECK(e > 0.35);
  CHECK(e < 0.65);
}

TEST_CASE("random forest: a constant label is never misclassified") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(40, 2);
  CHECK(forest_oob_error(x, std::vector<int>(40, 1), {}, 2) == 0.0);
}

TEST_CASE("selection with singleton clusters returns the only candidate") {
  std::mt19937_64 rng(10);
  std::vector<std::size_t> truth;
  const auto f = grouped_features(rng, 50, {1, 1, 1}, 0.0, truth);
  std::vector<bool> good;
  for (Eigen::Index i = 0; i < 50; ++i) good.push_back(f(i, 0) > 0);
  const auto cl = cluster_features(f, 3, 0);
  const auto s = select_combination(f, column_labels(good), cl, {});
  CHECK(s.evaluated.size() == 1);
  CHECK(s.exhaustive);
  std::vector<std::size_t> chosen = s.chosen;
  std::sort(chosen.begin(), chosen.end());
  CHECK(chosen == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("planted separable features are chosen") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  const Eigen::Index n = 200;
  // Cluster A: f1 and two decoys correlated with it; cluster B: f2 and one decoy.
  Eigen::MatrixXd f(n, 5);
  std::vector<bool> good;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = g(rng), b = g(rng);
    f(i, 0) = a;
    f(i, 1) = a + 0.8 * g(rng);
    f(i, 2) = -a + 0.8 * g(rng);
    f(i, 3) = b;
    f(i, 4) = b + 0.8 * g(rng);
    good.push_back(a + b > 0);
  }
  Clustering cl;
  cl.k = 2;
  cl.assignment = {0, 0, 0, 1, 1};
  const auto s = select_combination(f, column_labels(good), cl, {});
  CHECK(s.exhaustive);
  CHECK(s.evaluated.size() == 6);
  CHECK(s.chosen == std::vector<std::size_t>{0, 3});
  CHECK(s.mean_oob <= 0.1);
  for (const auto& c : s.evaluated) CHECK(s.mean_oob <= c.mean_oob);
}

TEST_CASE("budget 1 evaluates one candidate and reports non-exhaustive search") {
  std::mt19937_64 rng(12);
  std::vector<std::size_t> truth;
  const auto f = grouped_features(rng, 60, {3, 3}, 0.4, truth);
  std::vector<bool> good;
  for (Eigen::Index i = 0; i < 60; ++i) good.push_back(f(i, 0) > 0);
  Clustering cl;
  cl.k = 2;
  cl.assignment = truth;
  SelectionConfig cfg;
  cfg.budget = 1;
  const auto s = select_combination(f, column_labels(good), cl, cfg);
  CHECK_FALSE(s.exhaustive);
  REQUIRE(s.evaluated.size() == 1);
  CHECK(s.chosen == s.evaluated[0].features);
  CHECK(s.mean_oob == s.evaluated[0].mean_oob);
}

TEST_CASE("budgeted search stays within budget and returns the best evaluated") {
  std::mt19937_64 rng(13);
  std::vector<std::size_t> truth;
  const auto f = grouped_features(rng, 60, {4, 4, 4}, 0.6, truth);
  LabelMatrix good(60, 2);
  for (Eigen::Index i = 0; i < 60; ++i) {
    good(i, 0) = f(i, 0) > 0;
    good(i, 1) = f(i, 5) + f(i, 9) > 0;
  }
  Clustering cl;
  cl.k = 3;
  cl.assignment = truth;
  SelectionConfig cfg;
  cfg.budget = 20;
  cfg.forest.trees = 30;
  cfg.jobs = 2;
  const auto s = select_combination(f, good, cl, cfg);
  CHECK_FALSE(s.exhaustive);
  CHECK(s.evaluated.size() <= 20);
  for (const auto& c : s.evaluated) CHECK(s.mean_oob <= c.mean_oob);
  cfg.jobs = 1;
  const auto t = select_combination(f, good, cl, cfg);
  CHECK(t.chosen == s.chosen);
  CHECK(t.mean_oob == s.mean_oob);
}

TEST_CASE("rank-deficient candidates score worst") {
  Eigen::MatrixXd f(10, 2);
  for (Eigen::Index i = 0; i < 10; ++i) {
    f(i, 0) = static_cast<double>(i);
    f(i, 1) = 2.0 * static_cast<double>(i);
  }
  CHECK_THROWS_AS(pca_scores(f), IllConditioned);
  LabelMatrix good(10, 1);
  for (Eigen::Index i = 0; i < 10; ++i) good(i, 0) = i < 5;
  const auto c = score_candidate(f, good, {0, 1}, {});
  CHECK(c.degenerate);
  CHECK(c.mean_oob == 1.0);
}

TEST_CASE("PCA scores are uncorrelated with decreasing variance") {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> g;
  Eigen::MatrixXd f(100, 3);
  for (Eigen::Index i = 0; i < 100; ++i) {
    const double a = g(rng);
    f(i, 0) = a;
    f(i, 1) = 2 * a + 0.3 * g(rng);
    f(i, 2) = g(rng);
  }
  const auto z = pca_scores(f);
  REQUIRE(z.cols() == 2);
  CHECK(std::abs(naive_pearson(z.col(0), z.col(1))) <= 1e-9);
  CHECK(z.col(0).squaredNorm() >= z.col(1).squaredNorm());
}
