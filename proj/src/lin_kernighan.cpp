#include "cvrpisa/lin_kernighan.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <limits>
#include <random>

#include "cvrpisa/graph.hpp"

namespace cvrpisa {

namespace {

constexpr double kMinGain = 1e-10;

using Clock = std::chrono::steady_clock;

// Array tour with an orientation flag. Reversing a path either reverses it in
// place or reverses its complement and flips the orientation, whichever is
// shorter; both yield the same oriented cycle.
class Tour {
 public:
  explicit Tour(const std::vector<std::size_t>& order) : order_(order), pos_(order.size()) {
    for (std::size_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = i;
  }

  std::size_t succ(std::size_t v) const {
    const std::size_t n = order_.size();
    return reversed_ ? order_[(pos_[v] + n - 1) % n] : order_[(pos_[v] + 1) % n];
  }
  std::size_t pred(std::size_t v) const {
    const std::size_t n = order_.size();
    return reversed_ ? order_[(pos_[v] + 1) % n] : order_[(pos_[v] + n - 1) % n];
  }

  void toggle() { reversed_ = !reversed_; }

  // Reverses the oriented path a -> ... -> b.
  void flip(std::size_t a, std::size_t b) {
    const std::size_t n = order_.size();
    std::size_t i = reversed_ ? pos_[b] : pos_[a];
    std::size_t j = reversed_ ? pos_[a] : pos_[b];
    const std::size_t len = (j + n - i) % n + 1;
    if (2 * len > n) {
      const std::size_t ci = (j + 1) % n;
      const std::size_t cj = (i + n - 1) % n;
      reversed_ = !reversed_;
      if (len == n) return;
      i = ci;
      j = cj;
    }
    const std::size_t span = (j + n - i) % n + 1;
    for (std::size_t s = 0; s < span / 2; ++s) {
      const std::size_t p = (i + s) % n;
      const std::size_t q = (j + n - s) % n;
      std::swap(order_[p], order_[q]);
      pos_[order_[p]] = p;
      pos_[order_[q]] = q;
    }
  }

  std::vector<std::size_t> oriented() const {
    std::vector<std::size_t> out;
    out.reserve(order_.size());
    std::size_t v = order_.front();
    for (std::size_t k = 0; k < order_.size(); ++k) {
      out.push_back(v);
      v = succ(v);
    }
    return out;
  }

 private:
  std::vector<std::size_t> order_;
  std::vector<std::size_t> pos_;
  bool reversed_ = false;
};

class MoveSearch {
 public:
  MoveSearch(const DistanceMatrix& d, const std::vector<std::vector<std::size_t>>& cand, std::size_t depth,
             Tour& tour)
      : d_(d), cand_(cand), depth_(depth), tour_(tour) {}

  // Tries to find an improving sequential move starting at t1 with
  // t2 = succ(t1). On success the tour is modified and the touched nodes are
  // returned via touched().
  bool try_from(std::size_t t1, double& gain, std::size_t& flips) {
    t1_ = t1;
    flips_.clear();
    touched_.clear();
    if (extend(1, 0.0, gain)) {
      flips = flips_.size();
      return true;
    }
    return false;
  }

  const std::vector<std::size_t>& touched() const { return touched_; }

 private:
  std::size_t breadth(std::size_t level) const {
    if (level == 1) return std::numeric_limits<std::size_t>::max();
    return level == 2 ? 5 : 3;
  }

  bool extend(std::size_t level, double realized, double& gain) {
    const std::size_t t1 = t1_;
    const std::size_t t2 = tour_.succ(t1);
    const double open = realized + d_(t1, t2);
    std::size_t tried = 0;
    for (std::size_t t3 : cand_[t2]) {
      if (tried >= breadth(level)) break;
      if (open - d_(t2, t3) <= kMinGain) break;  // candidates are sorted by distance
      if (t3 == t1 || t3 == tour_.succ(t2)) continue;
      ++tried;
      const std::size_t t4 = tour_.pred(t3);
      const double delta = d_(t1, t4) + d_(t2, t3) - d_(t1, t2) - d_(t4, t3);
      const double now = realized - delta;
      tour_.flip(t2, t4);
      flips_.emplace_back(t2, t4);
      if (now > kMinGain) {
        gain = now;
        for (auto [a, b] : flips_) {
          touched_.push_back(a);
          touched_.push_back(b);
        }
        touched_.push_back(t1);
        touched_.push_back(t3);
        return true;
      }
      if (level < depth_ && extend(level + 1, now, gain)) {
        touched_.push_back(t3);
        return true;
      }
      tour_.flip(t4, t2);
      flips_.pop_back();
    }
    return false;
  }

  const DistanceMatrix& d_;
  const std::vector<std::vector<std::size_t>>& cand_;
  std::size_t depth_;
  Tour& tour_;
  std::size_t t1_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> flips_;
  std::vector<std::size_t> touched_;
};

LocalSearchResult run_lk(const DistanceMatrix& d, const std::vector<std::vector<std::size_t>>& cand,
                         std::vector<std::size_t>& order, std::size_t depth, Clock::time_point deadline,
                         bool bounded) {
  LocalSearchResult res;
  const std::size_t n = order.size();
  if (n < 4) return res;
  Tour tour(order);
  MoveSearch search(d, cand, depth, tour);

  std::deque<std::size_t> queue(order.begin(), order.end());
  std::vector<bool> queued(n, true);
  std::size_t polls = 0;

  while (!queue.empty()) {
    if (bounded && (++polls & 63) == 0 && Clock::now() > deadline) {
      res.timed_out = true;
      break;
    }
    const std::size_t t1 = queue.front();
    queue.pop_front();
    queued[t1] = false;

    bool improved = false;
    for (int side = 0; side < 2 && !improved; ++side) {
      double gain = 0.0;
      std::size_t flips = 0;
      if (search.try_from(t1, gain, flips)) {
        improved = true;
        ++res.improving_steps;
        res.exchanges += flips;
        res.improvements.push_back(gain);
        for (std::size_t v : search.touched()) {
          if (!queued[v]) {
            queued[v] = true;
            queue.push_back(v);
          }
        }
      }
      tour.toggle();  // look at t2 = pred(t1) next; orientation is immaterial to the cycle
    }
    if (improved && !queued[t1]) {
      queued[t1] = true;
      queue.push_back(t1);
    }
  }
  order = tour.oriented();
  return res;
}

}  // namespace

double tour_cost(const DistanceMatrix& d, const std::vector<std::size_t>& tour) {
  double c = 0.0;
  for (std::size_t i = 0; i < tour.size(); ++i) c += d(tour[i], tour[(i + 1) % tour.size()]);
  return c;
}

std::vector<std::size_t> nearest_neighbor_tour(const DistanceMatrix& d, std::size_t start) {
  const std::size_t n = d.size();
  std::vector<std::size_t> tour;
  tour.reserve(n);
  std::vector<bool> used(n, false);
  std::size_t cur = start;
  used[cur] = true;
  tour.push_back(cur);
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!used[v] && (best == n || d(cur, v) < d(cur, best))) best = v;
    }
    used[best] = true;
    tour.push_back(best);
    cur = best;
  }
  return tour;
}

LocalSearchResult lin_kernighan(const DistanceMatrix& d, std::vector<std::size_t>& tour, const ProbingConfig& cfg,
                                double deadline_s) {
  const auto cand = nearest_neighbors(d, std::min(cfg.candidates, d.size() > 0 ? d.size() - 1 : 0));
  const bool bounded = deadline_s > 0.0;
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(bounded ? deadline_s : 0.0));
  return run_lk(d, cand, tour, std::max<std::size_t>(cfg.depth, 1), deadline, bounded);
}

ProbingTrace run_probing(const DistanceMatrix& d, const ProbingConfig& cfg, std::uint64_t seed) {
  ProbingTrace trace;
  const std::size_t n = d.size();
  if (n == 0) return trace;
  const auto cand = nearest_neighbors(d, std::min(cfg.candidates, n - 1));
  std::mt19937_64 rng(seed);
  const auto start_time = Clock::now();
  const auto deadline = start_time + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(std::max(cfg.time_budget_s, 0.0)));
  const bool bounded = cfg.time_budget_s > 0.0;

  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    const std::size_t start = static_cast<std::size_t>(rng() % n);
    if (r > 0 && bounded && Clock::now() > deadline) {
      trace.partial = true;
      break;
    }
    RestartTrace rt;
    rt.tour = nearest_neighbor_tour(d, start);
    rt.construction_cost = tour_cost(d, rt.tour);
    auto ls = run_lk(d, cand, rt.tour, std::max<std::size_t>(cfg.depth, 1), deadline, bounded && r > 0);
    if (ls.timed_out) {
      trace.partial = true;
      break;
    }
    rt.local_min_cost = tour_cost(d, rt.tour);
    rt.improving_steps = ls.improving_steps;
    rt.exchanges = ls.exchanges;
    rt.improvements = std::move(ls.improvements);
    trace.restarts.push_back(std::move(rt));
  }
  return trace;
}

}  // namespace cvrpisa
