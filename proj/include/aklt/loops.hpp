#pragma once

#include <vector>

namespace aklt {

// Multigraph used for closed-loop counting on a domain's internal bond
// structure. wx/wy mark edges crossing the periodic seams, so winding
// parities of loop configurations are well defined.
struct LoopGraph {
  struct LEdge {
    int u = 0, v = 0;
    bool wx = false, wy = false;
  };
  int V = 0;
  std::vector<LEdge> edges;
};

// Number of edge subsets with all vertex degrees even (the cycle space
// size). Brute force enumerates all 2^E subsets in Gray-code order;
// requires E <= 26.
long long count_even_subgraphs_brute(const LoopGraph& g);

// Same restricted to subsets whose total seam-crossing parity is zero in
// both directions (contractible loop configurations on the torus).
long long count_even_zero_winding_brute(const LoopGraph& g);

// Closed forms: 2^(E - V + C), and 2^(E - V + C - W) where W is the GF(2)
// rank of the winding vectors of the fundamental cycles (0..2).
long long count_even_subgraphs_formula(const LoopGraph& g);
long long count_even_zero_winding_formula(const LoopGraph& g);

// Loop-set count 2^(E - V + 1) of a single connected domain; throws
// std::invalid_argument when the graph is disconnected (a domain is
// connected by construction, so that is caller error).
long long count_loop_sets(const LoopGraph& g);

}  // namespace aklt
