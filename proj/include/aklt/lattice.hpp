#pragma once

#include <string>
#include <vector>

namespace aklt {

enum class LatticeKind { Chain1D, Honeycomb, Patch };
enum class Boundary { Periodic, Open };

// One valence-bond edge. Endpoints are site indices with u <= v; parallel
// edges on small periodic lattices are distinct entries. u_slot/v_slot give
// the virtual-qubit slot the bond occupies at each endpoint; slots plus
// terminators form a perfect matching on virtual qubits.
struct Edge {
  int u = 0, v = 0;
  int u_slot = 0, v_slot = 0;
  bool wrap_x = false;  // crosses the periodic seam in the column direction
  bool wrap_y = false;  // crosses the periodic seam in the row direction
  bool wrap() const { return wrap_x || wrap_y; }
};

// Dangling spin-1/2 attached to an unmatched virtual-qubit slot on an open
// boundary. Its physical qubit index is num_sites*qubits_per_site + its
// position in the terminators vector.
struct Terminator {
  int site = 0;
  int slot = 0;
};

// Chain1D: spin-1 chain, 2 virtual qubits per site.
//   slot 0 = bond toward site-1, slot 1 = bond toward site+1.
// Honeycomb: spin-3/2 brick-wall embedding on an L x L square grid,
// 3 virtual qubits per site. Site (r,c) has index r*L+c;
//   slot 0 = bond to (r,c-1), slot 1 = bond to (r,c+1),
//   slot 2 = vertical bond, downward to (r+1,c) when (r+c) is even and
//   upward to (r-1,c) when odd. Every site has degree 3 (periodic) or
//   degree + terminators = 3 (open). Sublattice A = (r+c) even.
// Patch: hand-built open fragment (see make_patch); slots are assigned in
// edge input order and leftover slots are terminated, so small exact
// instances (dimer, star, hexagon) share the same bond layout rules.
struct Lattice {
  LatticeKind kind = LatticeKind::Chain1D;
  Boundary boundary = Boundary::Periodic;
  int L = 0;
  int num_sites = 0;
  int qubits_per_site = 0;
  std::vector<Edge> edges;
  std::vector<Terminator> terminators;
  std::vector<std::vector<int>> incident;  // site -> edge ids, parallel edges repeated
  std::vector<int> patch_color;            // patch only: BFS 2-coloring

  int row(int site) const { return kind == LatticeKind::Honeycomb ? site / L : 0; }
  int col(int site) const { return kind == LatticeKind::Honeycomb ? site % L : site; }
  // 0 = sublattice A, 1 = B. For the chain this is site parity.
  int sublattice(int site) const {
    return kind == LatticeKind::Patch ? patch_color[site] : (row(site) + col(site)) & 1;
  }
  int degree(int site) const { return static_cast<int>(incident[site].size()); }
  int num_terminators() const { return static_cast<int>(terminators.size()); }
  int total_qubits() const { return num_sites * qubits_per_site + num_terminators(); }
  int qubit(int site, int slot) const { return site * qubits_per_site + slot; }
  int terminator_qubit(int t) const { return num_sites * qubits_per_site + t; }
  int other_end(int edge_id, int site) const {
    const Edge& e = edges[edge_id];
    return e.u == site ? e.v : e.u;
  }
};

// Throws std::invalid_argument on unsupported parameters
// (L < 2, or periodic honeycomb with odd L).
Lattice make_lattice(LatticeKind kind, int L, Boundary boundary);

// Open patch with the given site edges; slots are assigned per endpoint in
// input order, leftover slots get terminators. Parallel edges are allowed,
// self-loops are not (a singlet inside one site dies under the symmetric
// projection). The patch must be bipartite (BFS coloring fills sublattice)
// and degrees must fit qubits_per_site; throws std::invalid_argument
// otherwise.
Lattice make_patch(int num_sites, int qubits_per_site,
                   const std::vector<std::pair<int, int>>& site_edges);

LatticeKind parse_lattice_kind(const std::string& s);
Boundary parse_boundary(const std::string& s);
std::string to_string(LatticeKind k);
std::string to_string(Boundary b);

}  // namespace aklt
