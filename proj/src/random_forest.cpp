#include "cvrpisa/random_forest.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "cvrpisa/error.hpp"
#include "cvrpisa/random.hpp"

namespace cvrpisa {

namespace {

double gini(std::size_t pos, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return 2.0 * p * (1.0 - p);
}

std::size_t next_index(std::uint64_t& state, std::size_t n) {
  state = splitmix64(state);
  return static_cast<std::size_t>((state >> 11) % n);
}

}  // namespace

int RandomForest::grow(Tree& tree, const Eigen::MatrixXd& x, const std::vector<int>& y,
                       std::vector<std::size_t>& idx, std::size_t begin, std::size_t end, std::size_t mtry,
                       std::uint64_t& state) {
  const int id = static_cast<int>(tree.size());
  tree.emplace_back();
  std::size_t pos = 0;
  for (std::size_t i = begin; i < end; ++i) pos += static_cast<std::size_t>(y[idx[i]] == 1);
  const std::size_t total = end - begin;
  tree[id].label = 2 * pos > total ? 1 : 0;
  if (pos == 0 || pos == total) return id;

  const auto p = static_cast<std::size_t>(x.cols());
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < p; ++i) std::swap(order[i], order[i + next_index(state, p - i)]);

  // Features are visited in random order; beyond the first `mtry`, only
  // until some valid split has been found.
  double best_score = std::numeric_limits<double>::infinity();
  int best_feature = -1;
  double best_threshold = 0.0;
  std::vector<std::size_t> sorted(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                                  idx.begin() + static_cast<std::ptrdiff_t>(end));
  for (std::size_t fi = 0; fi < p; ++fi) {
    if (fi >= mtry && best_feature >= 0) break;
    const auto f = static_cast<Eigen::Index>(order[fi]);
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
      return x(static_cast<Eigen::Index>(a), f) < x(static_cast<Eigen::Index>(b), f) ||
             (x(static_cast<Eigen::Index>(a), f) == x(static_cast<Eigen::Index>(b), f) && a < b);
    });
    std::size_t left_pos = 0;
    for (std::size_t i = 0; i + 1 < total; ++i) {
      left_pos += static_cast<std::size_t>(y[sorted[i]] == 1);
      const double lo = x(static_cast<Eigen::Index>(sorted[i]), f);
      const double hi = x(static_cast<Eigen::Index>(sorted[i + 1]), f);
      if (!(lo < hi)) continue;
      const std::size_t nl = i + 1;
      const std::size_t nr = total - nl;
      const double score = static_cast<double>(nl) * gini(left_pos, nl) +
                           static_cast<double>(nr) * gini(pos - left_pos, nr);
      if (score < best_score) {
        best_score = score;
        best_feature = static_cast<int>(f);
        best_threshold = lo + (hi - lo) / 2.0;
      }
    }
  }
  if (best_feature < 0) return id;

  auto mid = std::partition(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                            idx.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t s) {
                              return x(static_cast<Eigen::Index>(s), best_feature) <= best_threshold;
                            });
  const auto split = static_cast<std::size_t>(mid - idx.begin());
  tree[id].feature = best_feature;
  tree[id].threshold = best_threshold;
  const int l = grow(tree, x, y, idx, begin, split, mtry, state);
  const int r = grow(tree, x, y, idx, split, end, mtry, state);
  tree[id].left = l;
  tree[id].right = r;
  return id;
}

int RandomForest::predict_tree(const Tree& tree, const Eigen::RowVectorXd& row) {
  int node = 0;
  while (tree[node].feature >= 0)
    node = row[tree[node].feature] <= tree[node].threshold ? tree[node].left : tree[node].right;
  return tree[node].label;
}

void RandomForest::fit(const Eigen::MatrixXd& x, const std::vector<int>& labels, const ForestParams& params,
                       std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (labels.size() != n) throw Error("random forest: label count differs from row count");
  if (n == 0 || x.cols() == 0) throw Error("random forest: empty training set");
  trees_.clear();
  std::vector<int> votes_for(n, 0), votes_total(n, 0);
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < params.trees; ++t) {
    std::vector<std::size_t> sample(n);
    std::vector<char> in_bag(n, 0);
    for (auto& s : sample) {
      s = uniform_index(rng, n);
      in_bag[s] = 1;
    }
    std::uint64_t state = rng();
    Tree tree;
    grow(tree, x, labels, sample, 0, n, std::max<std::size_t>(params.mtry, 1), state);
    for (std::size_t i = 0; i < n; ++i) {
      if (in_bag[i]) continue;
      ++votes_total[i];
      votes_for[i] += predict_tree(tree, x.row(static_cast<Eigen::Index>(i)));
    }
    trees_.push_back(std::move(tree));
  }
  std::size_t counted = 0, wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (votes_total[i] == 0) continue;
    ++counted;
    const int pred = 2 * votes_for[i] > votes_total[i] ? 1 : 0;
    wrong += static_cast<std::size_t>(pred != labels[i]);
  }
  oob_error_ = counted ? static_cast<double>(wrong) / static_cast<double>(counted) : 0.0;
}

int RandomForest::predict(const Eigen::RowVectorXd& row) const {
  int votes = 0;
  for (const auto& t : trees_) votes += predict_tree(t, row);
  return 2 * votes > static_cast<int>(trees_.size()) ? 1 : 0;
}

double forest_oob_error(const Eigen::MatrixXd& x, const std::vector<int>& labels, const ForestParams& params,
                        std::uint64_t seed) {
  RandomForest rf;
  rf.fit(x, labels, params, seed);
  return rf.oob_error();
}

}  // namespace cvrpisa
