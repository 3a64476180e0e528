#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace aklt {

// Measurement-driven graph rewriting on a fixed vertex set. Vertices are
// never reindexed: dead (measured) vertices keep their ids. The log records
// each measurement in order, which is what a downstream device would
// execute on the physical graph state.
//
// Rules (single-qubit measurements on a graph state, +1 branch, local
// byproducts dropped):
//   measure_z(v): delete v and its edges.
//   measure_y(v): locally complement the neighborhood of v, delete v.
//   measure_x_pair(left, mid): requires N(mid) == {left, right}. Deletes
//     left and mid; the surviving right endpoint inherits the symmetric
//     difference N(right) ^ N(left) (minus the measured pair), which is the
//     exact stabilizer-algebra result for measuring X on both qubits.
class RewriteGraph {
 public:
  RewriteGraph() = default;
  RewriteGraph(int n, const std::vector<std::pair<int, int>>& edge_list);

  int size() const { return static_cast<int>(adj_.size()); }
  int alive_count() const { return alive_n_; }
  bool alive(int v) const { return alive_[v] != 0; }
  bool adjacent(int u, int v) const { return adj_[u].count(v) > 0; }
  const std::set<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  std::vector<std::pair<int, int>> edges() const;  // alive edges, a<b, sorted
  std::vector<int> alive_vertices() const;

  void add_edge(int u, int v);  // construction only; not logged

  void measure_z(int v);
  void measure_y(int v);
  void measure_x_pair(int left, int mid);

  struct LogEntry {
    char op;  // 'z', 'y', or 'x'
    int a = -1, b = -1;  // 'x' uses both (left, mid)
  };
  const std::vector<LogEntry>& log() const { return log_; }

  // Adjacency bitmask rows over alive vertices in ascending id order;
  // requires alive_count() <= 64.
  std::vector<uint64_t> packed_adjacency(const std::vector<int>& order) const;

 private:
  void require_alive(int v) const;
  void kill(int v);
  void toggle(int u, int v);

  std::vector<std::set<int>> adj_;
  std::vector<char> alive_;
  std::vector<LogEntry> log_;
  int alive_n_ = 0;
};

}  // namespace aklt
