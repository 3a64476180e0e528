#include "aklt/loops.hpp"

#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace aklt {

namespace {

long long brute(const LoopGraph& g, bool require_zero_winding) {
  const int E = static_cast<int>(g.edges.size());
  if (E > 26) throw std::invalid_argument("brute-force loop count limited to E <= 26");
  std::vector<uint8_t> parity(g.V, 0);
  int odd = 0;
  int wx = 0, wy = 0;
  long long count = 1;  // empty subset
  const uint64_t total = 1ull << E;
  for (uint64_t i = 1; i < total; ++i) {
    // Gray code: subset i^(i>>1) differs from the previous one by bit k.
    const int k = std::countr_zero(i);
    const auto& e = g.edges[k];
    odd += parity[e.u] ? -1 : 1;
    parity[e.u] ^= 1;
    odd += parity[e.v] ? -1 : 1;
    parity[e.v] ^= 1;
    wx ^= e.wx;
    wy ^= e.wy;
    if (odd == 0 && (!require_zero_winding || (wx == 0 && wy == 0))) ++count;
  }
  return count;
}

}  // namespace

long long count_even_subgraphs_brute(const LoopGraph& g) { return brute(g, false); }

long long count_even_zero_winding_brute(const LoopGraph& g) { return brute(g, true); }

namespace {

int uf_find(std::vector<int>& p, int x) {
  while (p[x] != x) {
    p[x] = p[p[x]];
    x = p[x];
  }
  return x;
}

struct CycleData {
  int betti = 0;         // E - V + C
  int winding_rank = 0;  // GF(2) rank of fundamental-cycle winding vectors
  int components = 0;
};

CycleData analyze(const LoopGraph& g) {
  std::vector<int> parent(g.V);
  std::iota(parent.begin(), parent.end(), 0);
  // Per-vertex seam parity along its tree path to the component root,
  // maintained eagerly: when we union, we re-root the smaller side.
  // Simpler: build a spanning forest first, then BFS parities.
  std::vector<std::vector<std::pair<int, int>>> tree(g.V);  // (neighbor, edge id)
  std::vector<int> extra;
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    const auto& e = g.edges[i];
    int ru = uf_find(parent, e.u), rv = uf_find(parent, e.v);
    if (ru != rv) {
      parent[ru] = rv;
      tree[e.u].push_back({e.v, i});
      tree[e.v].push_back({e.u, i});
    } else {
      extra.push_back(i);
    }
  }
  std::vector<uint8_t> pvec(g.V, 255);  // 2-bit seam parity from root; 255 = unseen
  std::vector<int> stack;
  int comps = 0;
  for (int v = 0; v < g.V; ++v) {
    if (pvec[v] != 255) continue;
    ++comps;
    pvec[v] = 0;
    stack.push_back(v);
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (auto [t, ei] : tree[s]) {
        if (pvec[t] != 255) continue;
        const auto& e = g.edges[ei];
        pvec[t] = pvec[s] ^ static_cast<uint8_t>(e.wx | (e.wy << 1));
        stack.push_back(t);
      }
    }
  }
  CycleData cd;
  cd.betti = static_cast<int>(g.edges.size()) - g.V + comps;
  cd.components = comps;
  uint8_t basis[2] = {0, 0};
  for (int ei : extra) {
    const auto& e = g.edges[ei];
    uint8_t w = pvec[e.u] ^ pvec[e.v] ^ static_cast<uint8_t>(e.wx | (e.wy << 1));
    for (int b = 1; b >= 0; --b) {
      if (!(w >> b & 1)) continue;
      if (basis[b]) {
        w ^= basis[b];
      } else {
        basis[b] = w;
        ++cd.winding_rank;
        w = 0;
      }
    }
  }
  return cd;
}

}  // namespace

long long count_even_subgraphs_formula(const LoopGraph& g) {
  return 1ll << analyze(g).betti;
}

long long count_even_zero_winding_formula(const LoopGraph& g) {
  CycleData cd = analyze(g);
  return 1ll << (cd.betti - cd.winding_rank);
}

long long count_loop_sets(const LoopGraph& g) {
  CycleData cd = analyze(g);
  if (cd.components != 1)
    throw std::invalid_argument("count_loop_sets expects a connected domain graph");
  return 1ll << cd.betti;
}

}  // namespace aklt
