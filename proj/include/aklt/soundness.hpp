#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aklt/rewrite.hpp"

namespace aklt {

struct SoundnessResult {
  bool ok = false;
  std::string detail;
};

// Replays the measurement log of `final_graph` (which was produced by
// rewriting the graph state over `initial_edges`) on an exact stabilizer
// tableau with +1 postselection (falling back to the -1 branch when +1 has
// zero probability), restricts to the surviving qubits, and checks that the
// resulting state is local-Clifford equivalent to the rewrite output.
//
// Meaningful for a single rule application (one Z, one Y, or one X pair):
// byproduct local Cliffords of earlier measurements reframe later
// measurement bases, so raw replay of longer logs can genuinely diverge
// from the composed graph rules. Sequence soundness is therefore checked
// one application at a time against the graph each rewrite acted on.
SoundnessResult check_rewrite_soundness(int n,
                                        const std::vector<std::pair<int, int>>& initial_edges,
                                        const RewriteGraph& final_graph);

}  // namespace aklt
