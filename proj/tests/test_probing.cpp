#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "cvrpisa/lin_kernighan.hpp"

using namespace cvrpisa;

namespace {

DistanceMatrix euclidean(const std::vector<Point>& p) {
  DistanceMatrix d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) d(i, j) = std::hypot(p[i].x - p[j].x, p[i].y - p[j].y);
  return d;
}

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> p(n);
  for (auto& q : p) q = {u(rng), u(rng)};
  return p;
}

bool is_permutation_of_nodes(std::vector<std::size_t> t, std::size_t n) {
  std::sort(t.begin(), t.end());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] != i) return false;
  return t.size() == n;
}

}  // namespace

TEST_CASE("local optima admit no improving 2-opt exchange") {
  std::mt19937_64 rng(17);
  ProbingConfig cfg;
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 4 + static_cast<std::size_t>(c % 8);  // n - 1 <= candidate list length
    const auto d = euclidean(random_points(rng, n));
    auto tour = nearest_neighbor_tour(d, static_cast<std::size_t>(c) % n);
    lin_kernighan(d, tour, cfg);
    CAPTURE(c);
    REQUIRE(is_permutation_of_nodes(tour, n));
    CHECK(oracle::best_two_opt_gain(d, tour) <= 1e-9);
  }
}

TEST_CASE("20 restarts on 7 nodes reach the exhaustive optimum") {
  std::mt19937_64 rng(23);
  ProbingConfig cfg;
  cfg.time_budget_s = 0.0;
  int reached = 0;
  const int cases = 50;
  for (int c = 0; c < cases; ++c) {
    const auto d = euclidean(random_points(rng, 7));
    const auto trace = run_probing(d, cfg, static_cast<std::uint64_t>(c));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : trace.restarts) best = std::min(best, r.local_min_cost);
    const double opt = oracle::tsp_optimum(d);
    CHECK(best >= opt - 1e-9);
    if (best <= opt + 1e-9) ++reached;
  }
  CHECK(reached == cases);
}

TEST_CASE("trace invariants") {
  std::mt19937_64 rng(29);
  ProbingConfig cfg;
  cfg.time_budget_s = 0.0;
  for (int c = 0; c < 60; ++c) {
    const std::size_t n = 4 + static_cast<std::size_t>(c);
    const auto d = euclidean(random_points(rng, n));
    const auto trace = run_probing(d, cfg, 99);
    REQUIRE(trace.restarts.size() == cfg.restarts);
    CHECK_FALSE(trace.partial);
    for (const auto& r : trace.restarts) {
      CHECK(r.local_min_cost <= r.construction_cost + 1e-12);
      CHECK(is_permutation_of_nodes(r.tour, n));
      CHECK(r.local_min_cost == doctest::Approx(tour_cost(d, r.tour)).epsilon(1e-12));
      CHECK(r.improvements.size() == r.improving_steps);
      CHECK(r.exchanges >= r.improving_steps);
      double total = 0.0;
      for (double g : r.improvements) {
        CHECK(g > 0.0);
        total += g;
      }
      CHECK(r.construction_cost - r.local_min_cost == doctest::Approx(total).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("probing is deterministic for a seed") {
  std::mt19937_64 rng(31);
  const auto d = euclidean(random_points(rng, 40));
  ProbingConfig cfg;
  cfg.time_budget_s = 0.0;
  const auto a = run_probing(d, cfg, 5);
  const auto b = run_probing(d, cfg, 5);
  REQUIRE(a.restarts.size() == b.restarts.size());
  for (std::size_t r = 0; r < a.restarts.size(); ++r) {
    CHECK(a.restarts[r].tour == b.restarts[r].tour);
    CHECK(a.restarts[r].improvements == b.restarts[r].improvements);
  }
}

TEST_CASE("convex position: construction is already optimal") {
  std::vector<Point> p;
  for (int i = 0; i < 12; ++i) {
    const double a = 2 * std::numbers::pi * i / 12;
    p.push_back({std::cos(a), std::sin(a)});
  }
  const auto d = euclidean(p);
  ProbingConfig cfg;
  cfg.time_budget_s = 0.0;
  const auto trace = run_probing(d, cfg, 1);
  for (const auto& r : trace.restarts) {
    CHECK(r.improving_steps == 0);
    CHECK(r.exchanges == 0);
    CHECK(r.local_min_cost == doctest::Approx(r.construction_cost));
  }
}
