#include "aklt/soundness.hpp"

#include "aklt/lc_equiv.hpp"
#include "aklt/tableau.hpp"

namespace aklt {

namespace {

// Postselect +1, falling back to -1 when the +1 branch has zero amplitude
// (the branches differ only by local byproducts, so either one must match
// the rewrite output up to local Cliffords).
bool measure_any_branch(Tableau& t, int q, Pauli p) {
  MeasureStatus st = t.measure_postselect(q, p, +1);
  if (st != MeasureStatus::Impossible) return true;
  st = t.measure_postselect(q, p, -1);
  return st != MeasureStatus::Impossible;
}

}  // namespace

SoundnessResult check_rewrite_soundness(int n,
                                        const std::vector<std::pair<int, int>>& initial_edges,
                                        const RewriteGraph& final_graph) {
  Tableau t = Tableau::graph_state(n, initial_edges);
  for (const auto& entry : final_graph.log()) {
    bool ok = true;
    switch (entry.op) {
      case 'z':
        ok = measure_any_branch(t, entry.a, Pauli::Z);
        break;
      case 'y':
        ok = measure_any_branch(t, entry.a, Pauli::Y);
        break;
      case 'x':
        ok = measure_any_branch(t, entry.a, Pauli::X) &&
             measure_any_branch(t, entry.b, Pauli::X);
        break;
      default:
        return {false, "unknown log entry"};
    }
    if (!ok) return {false, "both measurement branches impossible"};
  }
  const std::vector<int> survivors = final_graph.alive_vertices();
  Tableau reduced = t.restrict_to(survivors);
  const auto oracle_adj = reduced.to_graph_adjacency();
  const auto rule_adj = final_graph.packed_adjacency(survivors);
  if (!graphs_lc_equivalent(oracle_adj, rule_adj))
    return {false, "reduced state not LC-equivalent to rewrite output"};
  return {true, ""};
}

}  // namespace aklt
