#pragma once

#include <cstdint>
#include <vector>

namespace aklt {

// Graphs are adjacency bitmask rows over a fixed labeled vertex set
// (bit j of row i set iff i~j, diagonal zero).

std::vector<uint64_t> local_complement(std::vector<uint64_t> adj, int v);

// Decides whether the two graph states are related by local Clifford
// unitaries. Connected components must match as labeled vertex sets; per
// component the diagonal-symplectic linear system theta2*(B*theta1 + A) =
// D*theta1 + C is solved over GF(2) and its solution space searched for one
// with a_i d_i + b_i c_i = 1 at every vertex. Components are limited to 16
// vertices (64 unknowns).
bool graphs_lc_equivalent(const std::vector<uint64_t>& g1,
                          const std::vector<uint64_t>& g2);

// Exhaustive labeled local-complementation orbit search; exponential, used
// to cross-validate the solver on small graphs.
bool graphs_lc_equivalent_orbit(const std::vector<uint64_t>& g1,
                                const std::vector<uint64_t>& g2);

}  // namespace aklt
