#include "aklt/rewrite.hpp"

#include <algorithm>
#include <stdexcept>

namespace aklt {

RewriteGraph::RewriteGraph(int n, const std::vector<std::pair<int, int>>& edge_list)
    : adj_(n), alive_(n, 1), alive_n_(n) {
  for (auto [u, v] : edge_list) add_edge(u, v);
}

std::vector<std::pair<int, int>> RewriteGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < size(); ++v)
    for (int u : adj_[v])
      if (v < u) out.push_back({v, u});
  return out;
}

std::vector<int> RewriteGraph::alive_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (alive_[v]) out.push_back(v);
  return out;
}

void RewriteGraph::add_edge(int u, int v) {
  if (u == v) throw std::logic_error("self loop");
  require_alive(u);
  require_alive(v);
  adj_[u].insert(v);
  adj_[v].insert(u);
}

void RewriteGraph::require_alive(int v) const {
  if (v < 0 || v >= size() || !alive_[v]) throw std::logic_error("vertex not alive");
}

void RewriteGraph::kill(int v) {
  for (int u : adj_[v]) adj_[u].erase(v);
  adj_[v].clear();
  alive_[v] = 0;
  --alive_n_;
}

void RewriteGraph::toggle(int u, int v) {
  if (!adj_[u].erase(v)) {
    adj_[u].insert(v);
    adj_[v].insert(u);
  } else {
    adj_[v].erase(u);
  }
}

void RewriteGraph::measure_z(int v) {
  require_alive(v);
  kill(v);
  log_.push_back({'z', v, -1});
}

void RewriteGraph::measure_y(int v) {
  require_alive(v);
  std::vector<int> ns(adj_[v].begin(), adj_[v].end());
  for (size_t i = 0; i < ns.size(); ++i)
    for (size_t j = i + 1; j < ns.size(); ++j) toggle(ns[i], ns[j]);
  kill(v);
  log_.push_back({'y', v, -1});
}

void RewriteGraph::measure_x_pair(int left, int mid) {
  require_alive(left);
  require_alive(mid);
  if (!adjacent(left, mid)) throw std::logic_error("x-pair endpoints not adjacent");
  if (degree(mid) != 2) throw std::logic_error("x-pair mid vertex must have degree 2");
  int right = -1;
  for (int u : adj_[mid])
    if (u != left) right = u;
  if (right < 0) throw std::logic_error("x-pair mid vertex needs a distinct right neighbor");
  std::vector<int> ln(adj_[left].begin(), adj_[left].end());
  for (int u : ln)
    if (u != mid && u != right) toggle(right, u);
  kill(left);
  kill(mid);
  log_.push_back({'x', left, mid});
}

std::vector<uint64_t> RewriteGraph::packed_adjacency(const std::vector<int>& order) const {
  if (order.size() > 64) throw std::invalid_argument("packed adjacency limited to 64 vertices");
  std::vector<uint64_t> rows(order.size(), 0);
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = 0; j < order.size(); ++j)
      if (i != j && adjacent(order[i], order[j])) rows[i] |= 1ull << j;
  return rows;
}

}  // namespace aklt
