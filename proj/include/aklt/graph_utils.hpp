#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "aklt/rng.hpp"

namespace aklt {

inline bool adjacency_connected(const std::vector<uint64_t>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return true;
  uint64_t comp = 1, frontier = 1;
  while (frontier) {
    uint64_t next = 0, f = frontier;
    while (f) {
      int u = std::countr_zero(f);
      f &= f - 1;
      next |= adj[u];
    }
    frontier = next & ~comp;
    comp |= next;
  }
  return std::popcount(comp) == n;
}

inline std::vector<std::pair<int, int>> adjacency_edges(const std::vector<uint64_t>& adj) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(adj.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(adj.size()); ++j)
      if (adj[i] >> j & 1) out.push_back({i, j});
  return out;
}

// Adjacency rows from an edge-set bitmask over the n*(n-1)/2 vertex pairs
// in lexicographic order.
inline std::vector<uint64_t> adjacency_from_mask(int n, uint64_t mask) {
  std::vector<uint64_t> adj(n, 0);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (mask >> k & 1) {
        adj[i] |= 1ull << j;
        adj[j] |= 1ull << i;
      }
  return adj;
}

// All labeled connected graphs on n vertices (n <= 6 is practical).
inline std::vector<std::vector<uint64_t>> enumerate_connected_graphs(int n) {
  std::vector<std::vector<uint64_t>> out;
  const int pairs = n * (n - 1) / 2;
  for (uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
    auto adj = adjacency_from_mask(n, mask);
    if (adjacency_connected(adj)) out.push_back(std::move(adj));
  }
  return out;
}

// Uniform spanning-tree skeleton plus random extra edges: a connected
// random graph with roughly the requested edge count.
inline std::vector<uint64_t> random_connected_graph(int n, int extra_edges, Rng& rng) {
  std::vector<uint64_t> adj(n, 0);
  for (int v = 1; v < n; ++v) {
    int u = static_cast<int>(uniform_below(rng, v));
    adj[u] |= 1ull << v;
    adj[v] |= 1ull << u;
  }
  for (int e = 0; e < extra_edges; ++e) {
    int u = static_cast<int>(uniform_below(rng, n));
    int v = static_cast<int>(uniform_below(rng, n));
    if (u == v) continue;
    adj[u] |= 1ull << v;
    adj[v] |= 1ull << u;
  }
  return adj;
}

}  // namespace aklt
