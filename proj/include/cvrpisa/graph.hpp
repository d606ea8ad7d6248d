#pragma once

#include <cstddef>
#include <vector>

#include "cvrpisa/instance.hpp"

namespace cvrpisa {

struct SpanningTree {
  // parent[root] == root.
  std::vector<std::size_t> parent;
  std::vector<double> edge_costs;
  double total = 0.0;
};

// Prim's algorithm on the complete graph, rooted at `root`.
SpanningTree minimum_spanning_tree(const DistanceMatrix& d, std::size_t root);

std::vector<std::size_t> tree_degrees(const SpanningTree& t);
// Hop count from the root.
std::vector<std::size_t> tree_depths(const SpanningTree& t);

using Digraph = std::vector<std::vector<std::size_t>>;

// For each node, its k nearest other nodes in increasing distance; ties
// broken by smaller index.
std::vector<std::vector<std::size_t>> nearest_neighbors(const DistanceMatrix& d, std::size_t k);

// Arc i -> j for each of the k nearest j != i, taken from lists built with at
// least k entries.
Digraph knn_digraph(const std::vector<std::vector<std::size_t>>& nearest, std::size_t k);

// Component id per node and the component sizes.
struct Components {
  std::vector<std::size_t> id;
  std::vector<std::size_t> sizes;
  std::size_t count() const noexcept { return sizes.size(); }
};

Components strongly_connected_components(const Digraph& g);
Components weakly_connected_components(const Digraph& g);

}  // namespace cvrpisa
