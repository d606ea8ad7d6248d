#include "cvrpisa/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace cvrpisa {

SpanningTree minimum_spanning_tree(const DistanceMatrix& d, std::size_t root) {
  const std::size_t n = d.size();
  SpanningTree t;
  t.parent.assign(n, root);
  if (n == 0) return t;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  best[root] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
    }
    in_tree[u] = true;
    if (u != root) {
      t.edge_costs.push_back(best[u]);
      t.total += best[u];
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && d(u, v) < best[v]) {
        best[v] = d(u, v);
        t.parent[v] = u;
      }
    }
  }
  return t;
}

std::vector<std::size_t> tree_degrees(const SpanningTree& t) {
  std::vector<std::size_t> deg(t.parent.size(), 0);
  for (std::size_t v = 0; v < t.parent.size(); ++v) {
    if (t.parent[v] == v) continue;
    ++deg[v];
    ++deg[t.parent[v]];
  }
  return deg;
}

std::vector<std::size_t> tree_depths(const SpanningTree& t) {
  const std::size_t n = t.parent.size();
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> depth(n, kUnset);
  for (std::size_t v = 0; v < n; ++v) {
    // Walk up to the first node with a known depth, then fill the path.
    std::vector<std::size_t> path;
    std::size_t u = v;
    while (depth[u] == kUnset && t.parent[u] != u) {
      path.push_back(u);
      u = t.parent[u];
    }
    if (depth[u] == kUnset) depth[u] = 0;
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth[*it] = depth[t.parent[*it]] + 1;
  }
  return depth;
}

std::vector<std::vector<std::size_t>> nearest_neighbors(const DistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.size();
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    const std::size_t kk = std::min(k, order.size());
    auto closer = [&](std::size_t a, std::size_t b) { return d(i, a) < d(i, b) || (d(i, a) == d(i, b) && a < b); };
    const auto mid = order.begin() + static_cast<std::ptrdiff_t>(kk);
    std::nth_element(order.begin(), mid, order.end(), closer);
    std::sort(order.begin(), mid, closer);
    out[i].assign(order.begin(), mid);
  }
  return out;
}

Digraph knn_digraph(const std::vector<std::vector<std::size_t>>& nearest, std::size_t k) {
  Digraph g(nearest.size());
  for (std::size_t i = 0; i < nearest.size(); ++i) {
    const std::size_t kk = std::min(k, nearest[i].size());
    g[i].assign(nearest[i].begin(), nearest[i].begin() + static_cast<std::ptrdiff_t>(kk));
  }
  return g;
}

Components strongly_connected_components(const Digraph& g) {
  // Iterative Tarjan.
  const std::size_t n = g.size();
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  Components c;
  c.id.assign(n, 0);
  std::size_t counter = 0;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next arc)

  for (std::size_t s = 0; s < n; ++s) {
    if (index[s] != kUnset) continue;
    call.emplace_back(s, 0);
    while (!call.empty()) {
      auto& [v, arc] = call.back();
      if (arc == 0 && index[v] == kUnset) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (arc < g[v].size()) {
        const std::size_t w = g[v][arc++];
        if (index[w] == kUnset) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        const std::size_t comp = c.sizes.size();
        std::size_t size = 0;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          c.id[w] = comp;
          ++size;
        } while (w != v);
        c.sizes.push_back(size);
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return c;
}

Components weakly_connected_components(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> uf(n);
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : g[v]) {
      const auto a = find(v);
      const auto b = find(w);
      if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }
  }
  Components c;
  c.id.assign(n, 0);
  std::vector<std::size_t> remap(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = find(v);
    if (remap[r] == n) {
      remap[r] = c.sizes.size();
      c.sizes.push_back(0);
    }
    c.id[v] = remap[r];
    ++c.sizes[remap[r]];
  }
  return c;
}

}  // namespace cvrpisa
