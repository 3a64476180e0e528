#include "aklt/lc_equiv.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace aklt {

std::vector<uint64_t> local_complement(std::vector<uint64_t> adj, int v) {
  const uint64_t nv = adj[v];
  for (int u = 0; u < static_cast<int>(adj.size()); ++u)
    if (nv >> u & 1) adj[u] ^= nv & ~(1ull << u);
  return adj;
}

namespace {

std::vector<uint64_t> component_masks(const std::vector<uint64_t>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<uint64_t> comps;
  uint64_t seen = 0;
  for (int v = 0; v < n; ++v) {
    if (seen >> v & 1) continue;
    uint64_t comp = 0, frontier = 1ull << v;
    while (frontier) {
      comp |= frontier;
      uint64_t next = 0;
      uint64_t f = frontier;
      while (f) {
        int u = std::countr_zero(f);
        f &= f - 1;
        next |= adj[u];
      }
      frontier = next & ~comp;
    }
    seen |= comp;
    comps.push_back(comp);
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

// Solve the per-component system. t1/t2 are k-row adjacencies over dense
// local indices. Returns true iff some GF(2) solution satisfies the
// determinant condition at every vertex.
bool component_equivalent(const std::vector<uint64_t>& t1, const std::vector<uint64_t>& t2) {
  const int k = static_cast<int>(t1.size());
  if (k > 16) throw std::invalid_argument("LC solver limited to 16-vertex components");
  const int vars = 4 * k;  // packed [a | b | c | d]
  std::vector<uint64_t> rows;
  rows.reserve(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      uint64_t eq = 0;
      for (int m = 0; m < k; ++m)
        if ((t2[i] >> m & 1) && (t1[m] >> j & 1)) eq ^= 1ull << (k + m);  // b_m
      if (t2[i] >> j & 1) eq ^= 1ull << j;                               // a_j
      if (t1[i] >> j & 1) eq ^= 1ull << (3 * k + i);                     // d_i
      if (i == j) eq ^= 1ull << (2 * k + i);                             // c_i
      if (eq) rows.push_back(eq);
    }

  // Gaussian elimination; record pivot columns.
  std::vector<int> pivot_col;
  int top = 0;
  for (int col = 0; col < vars && top < static_cast<int>(rows.size()); ++col) {
    int p = -1;
    for (int i = top; i < static_cast<int>(rows.size()); ++i)
      if (rows[i] >> col & 1) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[top], rows[p]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (i != top && (rows[i] >> col & 1)) rows[i] ^= rows[top];
    pivot_col.push_back(col);
    ++top;
  }

  // Nullspace basis from free columns.
  std::vector<uint64_t> basis;
  std::vector<char> is_pivot(vars, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  for (int col = 0; col < vars; ++col) {
    if (is_pivot[col]) continue;
    uint64_t vec = 1ull << col;
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i)
      if (rows[i] >> col & 1) vec |= 1ull << pivot_col[i];
    basis.push_back(vec);
  }
  const int dim = static_cast<int>(basis.size());
  if (dim > 24) throw std::runtime_error("LC solution space too large to enumerate");

  const uint64_t amask = (k == 64 ? ~0ull : (1ull << k) - 1);
  auto satisfies = [&](uint64_t sol) {
    const uint64_t a = sol & amask;
    const uint64_t b = (sol >> k) & amask;
    const uint64_t c = (sol >> (2 * k)) & amask;
    const uint64_t d = (sol >> (3 * k)) & amask;
    return ((a & d) ^ (b & c)) == amask;  // a_i d_i + b_i c_i = 1 for all i
  };

  // Gray-code walk over all nullspace elements.
  uint64_t sol = 0;
  if (satisfies(sol)) return true;
  for (uint64_t i = 1; i < (1ull << dim); ++i) {
    sol ^= basis[std::countr_zero(i)];
    if (satisfies(sol)) return true;
  }
  return false;
}

std::vector<uint64_t> induced(const std::vector<uint64_t>& adj, uint64_t mask) {
  std::vector<int> verts;
  for (int v = 0; v < static_cast<int>(adj.size()); ++v)
    if (mask >> v & 1) verts.push_back(v);
  std::vector<uint64_t> sub(verts.size(), 0);
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = 0; j < verts.size(); ++j)
      if (adj[verts[i]] >> verts[j] & 1) sub[i] |= 1ull << j;
  return sub;
}

}  // namespace

bool graphs_lc_equivalent(const std::vector<uint64_t>& g1, const std::vector<uint64_t>& g2) {
  if (g1.size() != g2.size()) return false;
  auto c1 = component_masks(g1), c2 = component_masks(g2);
  if (c1 != c2) return false;  // local unitaries preserve entanglement structure
  for (uint64_t comp : c1) {
    if (std::popcount(comp) == 1) continue;
    if (!component_equivalent(induced(g1, comp), induced(g2, comp))) return false;
  }
  return true;
}

bool graphs_lc_equivalent_orbit(const std::vector<uint64_t>& g1, const std::vector<uint64_t>& g2) {
  if (g1.size() != g2.size()) return false;
  const int n = static_cast<int>(g1.size());
  auto key = [n](const std::vector<uint64_t>& adj) {
    std::string s;
    s.reserve(n * 8);
    for (uint64_t row : adj) s.append(reinterpret_cast<const char*>(&row), 8);
    return s;
  };
  std::unordered_set<std::string> seen;
  std::queue<std::vector<uint64_t>> q;
  seen.insert(key(g1));
  q.push(g1);
  const std::string target = key(g2);
  if (seen.count(target)) return true;
  while (!q.empty()) {
    auto adj = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      if (adj[v] == 0) continue;
      auto next = local_complement(adj, v);
      auto k = key(next);
      if (k == target) return true;
      if (seen.insert(std::move(k)).second) q.push(std::move(next));
    }
  }
  return false;
}

}  // namespace aklt
