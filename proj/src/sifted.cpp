#include "cvrpisa/sifted.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "cvrpisa/error.hpp"
#include "cvrpisa/random.hpp"
#include "cvrpisa/stats.hpp"

namespace cvrpisa {

namespace {

constexpr double kRankTol = 1e-10;

std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index j) {
  std::vector<double> v(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = m(i, j);
  return v;
}

std::uint64_t candidate_seed(std::uint64_t seed, const std::vector<std::size_t>& cand) {
  std::uint64_t h = splitmix64(seed);
  for (auto f : cand) h = splitmix64(h ^ static_cast<std::uint64_t>(f));
  return h;
}

// Evaluates candidates concurrently; results land at their input index.
std::vector<CandidateScore> score_all(const Eigen::MatrixXd& x, const LabelMatrix& good,
                                      const std::vector<std::vector<std::size_t>>& cands, const SelectionConfig& cfg) {
  std::vector<CandidateScore> out(cands.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cands.size(); i = next++) out[i] = score_candidate(x, good, cands[i], cfg);
  };
  const std::size_t jobs = std::min<std::size_t>(std::max<std::size_t>(cfg.jobs, 1), cands.size());
  if (jobs <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

CorrelationFilter correlation_filter(const Eigen::MatrixXd& f, const Eigen::MatrixXd& y, double threshold,
                                     std::size_t min_keep) {
  if (f.rows() != y.rows()) throw Error("correlation filter: row counts differ");
  if (f.rows() < 3) throw Error("correlation filter: needs at least 3 instances");
  CorrelationFilter res;
  res.correlation.resize(f.cols(), y.cols());
  std::vector<double> strength(static_cast<std::size_t>(f.cols()), 0.0);
  for (Eigen::Index j = 0; j < f.cols(); ++j) {
    const auto fj = column(f, j);
    for (Eigen::Index a = 0; a < y.cols(); ++a) {
      const double r = pearson(fj, column(y, a));
      res.correlation(j, a) = r;
      strength[static_cast<std::size_t>(j)] = std::max(strength[static_cast<std::size_t>(j)], std::abs(r));
    }
    if (strength[static_cast<std::size_t>(j)] > threshold) res.surviving.push_back(static_cast<std::size_t>(j));
  }
  const std::size_t want = std::min<std::size_t>(min_keep, static_cast<std::size_t>(f.cols()));
  if (res.surviving.size() < want) {
    std::vector<std::size_t> order(strength.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return strength[a] > strength[b]; });
    for (auto j : order) {
      if (res.surviving.size() >= want) break;
      if (std::find(res.surviving.begin(), res.surviving.end(), j) == res.surviving.end()) {
        res.surviving.push_back(j);
        res.padded = true;
      }
    }
    std::sort(res.surviving.begin(), res.surviving.end());
  }
  return res;
}

Clustering cluster_features(const Eigen::MatrixXd& features, std::size_t k, std::uint64_t seed) {
  const auto m = static_cast<std::size_t>(features.cols());
  if (k < 1 || k > m)
    throw Error("cluster_features: K = " + std::to_string(k) + " but only " + std::to_string(m) + " features");
  return sign_aligned_kmeans(correlation_embedding(features), k, seed);
}

std::vector<ClusterQuality> k_sweep(const Eigen::MatrixXd& features, std::size_t k_lo, std::size_t k_hi,
                                    std::uint64_t seed) {
  std::vector<ClusterQuality> out;
  const auto m = static_cast<std::size_t>(features.cols());
  if (m < 3) return out;
  const Eigen::MatrixXd e = correlation_embedding(features);
  for (std::size_t k = std::max<std::size_t>(k_lo, 2); k <= std::min(k_hi, m - 1); ++k)
    out.push_back(cluster_quality(e, sign_aligned_kmeans(e, k, seed)));
  return out;
}

Eigen::MatrixXd pca_scores(const Eigen::MatrixXd& x) {
  if (x.cols() < 2 || x.rows() < 3) throw IllConditioned("PCA needs at least 2 columns and 3 rows");
  Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    const double sd = std::sqrt(c.col(j).squaredNorm() / static_cast<double>(c.rows() - 1));
    if (!(sd > kRankTol)) throw IllConditioned("PCA input column " + std::to_string(j) + " is constant");
    c.col(j) /= sd;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() < 2 || !(s[1] > kRankTol * std::max(1.0, s[0]))) throw IllConditioned("PCA input has rank below 2");
  Eigen::MatrixXd scores(c.rows(), 2);
  for (Eigen::Index k = 0; k < 2; ++k) {
    // Sign convention: the largest-magnitude loading is positive.
    Eigen::Index arg = 0;
    svd.matrixV().col(k).cwiseAbs().maxCoeff(&arg);
    const double sign = svd.matrixV()(arg, k) < 0.0 ? -1.0 : 1.0;
    scores.col(k) = sign * s[k] * svd.matrixU().col(k);
  }
  return scores;
}

CandidateScore score_candidate(const Eigen::MatrixXd& features, const LabelMatrix& good,
                               const std::vector<std::size_t>& candidate, const SelectionConfig& cfg) {
  CandidateScore sc;
  sc.features = candidate;
  sc.oob.assign(static_cast<std::size_t>(good.cols()), 1.0);
  Eigen::MatrixXd sub(features.rows(), static_cast<Eigen::Index>(candidate.size()));
  for (std::size_t j = 0; j < candidate.size(); ++j)
    sub.col(static_cast<Eigen::Index>(j)) = features.col(static_cast<Eigen::Index>(candidate[j]));
  Eigen::MatrixXd z;
  try {
    z = pca_scores(sub);
  } catch (const IllConditioned&) {
    sc.degenerate = true;
    sc.mean_oob = 1.0;
    return sc;
  }
  const std::uint64_t base = candidate_seed(cfg.seed, candidate);
  double total = 0.0;
  for (Eigen::Index a = 0; a < good.cols(); ++a) {
    std::vector<int> labels(static_cast<std::size_t>(good.rows()));
    for (Eigen::Index i = 0; i < good.rows(); ++i) labels[static_cast<std::size_t>(i)] = good(i, a) ? 1 : 0;
    const double e = forest_oob_error(z, labels, cfg.forest, derive_seed(base, static_cast<std::uint64_t>(a)));
    sc.oob[static_cast<std::size_t>(a)] = e;
    total += e;
  }
  sc.mean_oob = good.cols() > 0 ? total / static_cast<double>(good.cols()) : 0.0;
  return sc;
}

Selection select_combination(const Eigen::MatrixXd& features, const LabelMatrix& good, const Clustering& clusters,
                             const SelectionConfig& cfg) {
  if (good.rows() != features.rows()) throw Error("select_combination: label rows differ from feature rows");
  std::vector<std::vector<std::size_t>> members(clusters.k);
  for (std::size_t i = 0; i < clusters.assignment.size(); ++i) members[clusters.assignment[i]].push_back(i);
  for (std::size_t c = 0; c < clusters.k; ++c)
    if (members[c].empty()) throw Error("select_combination: empty cluster " + std::to_string(c));

  const std::size_t budget = std::max<std::size_t>(cfg.budget, 1);
  std::size_t combos = 1;
  bool overflow = false;
  for (const auto& m : members) {
    if (combos > budget / m.size()) overflow = true;
    combos = overflow ? budget + 1 : combos * m.size();
  }

  Selection sel;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  auto pick = [&](const std::vector<std::size_t>& digits) {
    std::vector<std::size_t> cand(clusters.k);
    for (std::size_t c = 0; c < clusters.k; ++c) cand[c] = members[c][digits[c]];
    return cand;
  };
  auto evaluate = [&](const std::vector<std::vector<std::size_t>>& batch) {
    std::vector<std::vector<std::size_t>> fresh;
    for (const auto& c : batch)
      if (!seen.count(c) && std::find(fresh.begin(), fresh.end(), c) == fresh.end()) fresh.push_back(c);
    auto scores = score_all(features, good, fresh, cfg);
    for (auto& s : scores) {
      seen.emplace(s.features, sel.evaluated.size());
      sel.evaluated.push_back(std::move(s));
    }
  };

  if (!overflow && combos <= budget) {
    std::vector<std::vector<std::size_t>> all;
    std::vector<std::size_t> digits(clusters.k, 0);
    for (std::size_t n = 0; n < combos; ++n) {
      all.push_back(pick(digits));
      for (std::size_t c = clusters.k; c-- > 0;) {
        if (++digits[c] < members[c].size()) break;
        digits[c] = 0;
      }
    }
    evaluate(all);
  } else {
    sel.exhaustive = false;
    std::mt19937_64 rng(derive_seed(cfg.seed, 0x5eedULL));
    const std::size_t sample = std::max<std::size_t>(budget / 2, 1);
    std::vector<std::vector<std::size_t>> batch;
    for (std::size_t s = 0; s < sample; ++s) {
      std::vector<std::size_t> digits(clusters.k);
      for (std::size_t c = 0; c < clusters.k; ++c) digits[c] = uniform_index(rng, members[c].size());
      batch.push_back(pick(digits));
    }
    evaluate(batch);

    // Greedy coordinate improvement from the best sample, within the budget.
    bool improved = true;
    while (improved && sel.evaluated.size() < budget) {
      improved = false;
      for (std::size_t c = 0; c < clusters.k && sel.evaluated.size() < budget; ++c) {
        auto best_it = std::min_element(sel.evaluated.begin(), sel.evaluated.end(),
                                        [](const auto& a, const auto& b) { return a.mean_oob < b.mean_oob; });
        const auto current = best_it->features;
        const double current_oob = best_it->mean_oob;
        std::vector<std::vector<std::size_t>> moves;
        for (auto f : members[c]) {
          auto cand = current;
          cand[c] = f;
          if (!seen.count(cand) && sel.evaluated.size() + moves.size() < budget) moves.push_back(cand);
        }
        evaluate(moves);
        for (const auto& m : moves)
          if (sel.evaluated[seen.at(m)].mean_oob < current_oob) improved = true;
      }
    }
  }

  const auto best = std::min_element(sel.evaluated.begin(), sel.evaluated.end(),
                                     [](const auto& a, const auto& b) { return a.mean_oob < b.mean_oob; });
  sel.chosen = best->features;
  sel.mean_oob = best->mean_oob;
  sel.oob = best->oob;
  return sel;
}

}  // namespace cvrpisa
