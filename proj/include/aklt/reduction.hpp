#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"
#include "aklt/rewrite.hpp"

namespace aklt {

// Distillation of a square-grid cluster state from a sampled domain graph.
// The net is carved as a hub-and-wire skeleton: one hub domain per grid node
// (node boxes of side l at pitch 4l) and one crossing path per l x 5l
// corridor rectangle between adjacent nodes. Everything off the net is
// measured in Z; wires are contracted with X-pair and Y measurements until
// exactly the grid adjacency remains.

// Failure stage is one of "plan", "carve", "clean", "contract"; the message
// names the offending node box, corridor rectangle, or junction.
struct ReductionFailure {
  std::string stage;
  std::string message;
  bool failed() const { return !stage.empty(); }
};

// Grid nodes are indexed row-major by (i, j) with 0 <= i, j < lambda_prime.
// wire_right[i * lambda_prime + j] holds the path for the grid edge
// (i, j)-(i, j+1) including both hub endpoints; wire_down likewise for
// (i, j)-(i+1, j). Unused slots stay empty.
struct NetLayout {
  int l = 0;
  int lambda_prime = 0;
  std::vector<int> hub;
  std::vector<std::vector<int>> wire_right;
  std::vector<std::vector<int>> wire_down;
  std::vector<char> in_net;  // vertex -> kept by the carve
};

// Rectangle side l = ceil(c * ln L), at least 2. The default constant is
// calibrated so carve failures stay rare at L <= 200 while the grid is as
// fine as the separation argument allows.
inline constexpr double kDefaultLConstant = 1.9;
int reduction_scale(int L, double l_constant = kDefaultLConstant);

// Grid width floor((L - l) / (4l)) + 1, or 0 when no node box fits.
int reduction_grid_size(int L, int l);

struct CarveResult {
  bool ok = false;
  NetLayout net;
  ReductionFailure failure;
};

// Chooses hubs and routes one shortest crossing path per corridor rectangle
// (breadth-first, ties broken toward smaller vertex ids). Wires of distinct
// corridors are kept at graph distance >= 2 from each other and from foreign
// hubs, so the carved net induces exactly the intended skeleton.
CarveResult carve_net(const Lattice& lat, const DomainDecomposition& dec,
                      const DomainGraph& g, int l);

// Measures every alive vertex outside net.in_net in Z, ascending id order.
void apply_net_carve(RewriteGraph& g, const NetLayout& net);

// Wire cleaning: walk from the left end, jump to each vertex's rightmost
// wire neighbor and Z-measure the vertices in between. Afterwards every
// wire vertex has a unique left and right neighbor. The path list is pruned
// to the surviving vertices. Fails when the wire is not alive or connected.
bool clean_wire(RewriteGraph& g, std::vector<int>& wire, ReductionFailure* fail);

// T-junction cleaning. The three wires are ordered from their far end to the
// shared junction center (each back() is the center). Removes the
// obstruction edge sets between wire pairs via the three-case procedure
// (re-center / Y measurement / Z-deletion between extremal neighbors),
// re-cleans the wires, then repeats with the left wire as the approach wire
// to clear the remaining left-right obstructions.
bool clean_t_junction(RewriteGraph& g, std::vector<int>& w_left, std::vector<int>& w_center,
                      std::vector<int>& w_right, ReductionFailure* fail);

// Pipeline pass: cleans every wire of the net, then verifies that no edge
// outside the net skeleton survives. Hub-and-wire nets carved by carve_net
// come out clean by construction, so this is their verification pass;
// synthetic nets with obstructions are repaired where the junction is
// three-valent and reported otherwise.
bool clean_wires_and_junctions(RewriteGraph& g, NetLayout& net, ReductionFailure* fail);

// Merges path.front() into path.back() along a clean induced path: a parity
// Y measurement when the interior count is even, then repeated X-pair
// measurements. The survivor inherits all off-path neighbors of the merged
// endpoint. With no interior vertices the endpoints are adjacent and the
// merged endpoint must carry exactly one off-path neighbor (Y measurement).
bool merge_along_path(RewriteGraph& g, const std::vector<int>& path, ReductionFailure* fail);

// Ring of four T-junctions -> one degree-4 vertex. ring lists the cycle in
// order; junction_pos gives the four junction positions in ascending order.
// The arc between the first two junctions is measured away in Z, then the
// first junction is merged around the open ring into the second. Returns the
// surviving vertex, or -1 on failure.
int collapse_ring(RewriteGraph& g, const std::vector<int>& ring,
                  const std::array<int, 4>& junction_pos, ReductionFailure* fail);

struct GridCertificate {
  int lambda_prime = 0;
  std::vector<int> vertex_at;  // grid index (row * lambda_prime + col) -> vertex
};

struct ContractResult {
  bool ok = false;
  GridCertificate cert;
  ReductionFailure failure;
};

// Contracts every wire to a single grid edge: X-pair measurements remove
// interior vertices two at a time; a final Y measurement toggles the hub-hub
// edge on when one interior remains. Hubs must not be adjacent beforehand.
ContractResult contract_to_grid(RewriteGraph& g, const NetLayout& net);

// Independent certificate check: the alive vertex set must be exactly the
// certificate's vertices and the alive adjacency must equal a freshly built
// lambda_prime x lambda_prime grid under the mapping (corner degree 2, edge
// degree 3, interior degree 4).
bool verify_grid_certificate(const RewriteGraph& g, const GridCertificate& cert);

struct StageCounts {
  int vertices = 0;
  long long edges = 0;
};

struct ReductionReport {
  bool success = false;
  uint64_t graph_hash = 0;
  int L = 0;
  int l = 0;
  int lambda_prime = 0;
  StageCounts initial, net, cleaned, grid;
  long long log_length = 0;
  ReductionFailure failure;
};

struct ReductionOutcome {
  ReductionReport report;
  RewriteGraph graph;
  GridCertificate cert;
};

// FNV-1a over vertex count and post-mod-2 edge list.
uint64_t domain_graph_hash(const DomainGraph& g);

// Full pipeline on one sampled configuration: decompose, carve, Z-measure
// off-net vertices, clean, contract, verify. Failures are reported in the
// outcome, never thrown.
ReductionOutcome reduce_to_grid(const Lattice& lat, const OutcomeConfig& cfg,
                                double l_constant = kDefaultLConstant);

// One JSON object per line: hash, sizes, per-stage vertex/edge counts,
// measurement-log length, success flag, failure stage and message.
std::string reduction_report_jsonl(const ReductionReport& r);

}  // namespace aklt
