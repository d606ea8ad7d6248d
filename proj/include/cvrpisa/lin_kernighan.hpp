#pragma once

#include <cstdint>
#include <vector>

#include "cvrpisa/instance.hpp"

namespace cvrpisa {

struct ProbingConfig {
  std::size_t restarts = 20;
  // Maximum number of sequential 2-opt exchanges chained into one move.
  std::size_t depth = 3;
  double time_budget_s = 10.0;
  // Candidate list length for the first exchange of a move.
  std::size_t candidates = 10;
};

// One restart: nearest-neighbor construction followed by Lin-Kernighan descent.
struct RestartTrace {
  double construction_cost = 0.0;
  double local_min_cost = 0.0;
  // Accepted improving moves.
  std::size_t improving_steps = 0;
  // Elementary exchanges (segment reversals) making up the accepted moves.
  std::size_t exchanges = 0;
  std::vector<double> improvements;
  std::vector<std::size_t> tour;
};

struct ProbingTrace {
  std::vector<RestartTrace> restarts;
  // Set when the time budget cut the run short.
  bool partial = false;
};

double tour_cost(const DistanceMatrix& d, const std::vector<std::size_t>& tour);

std::vector<std::size_t> nearest_neighbor_tour(const DistanceMatrix& d, std::size_t start);

struct LocalSearchResult {
  std::size_t improving_steps = 0;
  std::size_t exchanges = 0;
  std::vector<double> improvements;
  bool timed_out = false;
};

// Improves `tour` in place with depth-limited sequential edge exchange,
// taking the first improving move found. `deadline_s` is seconds from now;
// non-positive means unbounded.
LocalSearchResult lin_kernighan(const DistanceMatrix& d, std::vector<std::size_t>& tour,
                                const ProbingConfig& cfg, double deadline_s = 0.0);

// Runs cfg.restarts restarts from seeded random start nodes. The first restart
// always completes; later ones are skipped once the budget is spent.
ProbingTrace run_probing(const DistanceMatrix& d, const ProbingConfig& cfg, std::uint64_t seed);

}  // namespace cvrpisa
