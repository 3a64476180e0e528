#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "aklt/lattice.hpp"

namespace aklt {

// POVM outcome axis per site. Base-3 digit encoding in dumps: x=0, y=1, z=2.
enum class Axis : uint8_t { X = 0, Y = 1, Z = 2 };

inline char axis_char(Axis a) { return a == Axis::X ? 'x' : (a == Axis::Y ? 'y' : 'z'); }

using OutcomeConfig = std::vector<Axis>;

// Maximal connected clusters of equal-outcome sites (rule R1). Domain ids
// are dense, assigned in order of each domain's smallest site index.
struct DomainDecomposition {
  std::vector<int> domain_of;          // site -> domain id
  std::vector<std::vector<int>> members;  // domain -> sorted site list
  std::vector<Axis> axis;              // domain -> common outcome
  int num_domains = 0;
  bool cut_x = false, cut_y = false;   // seam edges ignored during labeling
};

// Multigraph on domains before mod-2 reduction, and the simple graph after
// rule R2 (edges of even multiplicity deleted). edges_pre holds distinct
// domain pairs with their lattice-edge multiplicities; e_pre_total counts
// inter-domain lattice edges with multiplicity.
struct DomainGraph {
  int V = 0;
  std::vector<std::pair<int, int>> edges_post;          // a < b, sorted
  std::vector<std::pair<std::pair<int, int>, int>> edges_pre;  // ((a,b), multiplicity)
  long long e_pre_total = 0;
  std::vector<std::vector<int>> adj_post;               // sorted neighbor lists
};

// Ignores lattice edges with wrap_x when cut_x is set (and likewise wrap_y),
// so spanning tests see the lattice cut open along the tested direction.
DomainDecomposition label_domains(const Lattice& lat, const OutcomeConfig& cfg,
                                  bool cut_x = false, bool cut_y = false);

DomainGraph build_domain_graph(const Lattice& lat, const DomainDecomposition& dec);

// log2 of the unnormalized configuration weight: |V| - |E-pre|. Empty when
// the weight vanishes, i.e. some domain's internal bond graph has an odd
// cycle (on bipartite lattices only the odd periodic chain's all-equal
// configuration).
std::optional<long long> log2_weight(const Lattice& lat, const DomainDecomposition& dec,
                                     const DomainGraph& g);

// Convenience: label + build + weight in one pass.
struct Decomposed {
  DomainDecomposition dec;
  DomainGraph graph;
  std::optional<long long> log2w;
};
Decomposed decompose(const Lattice& lat, const OutcomeConfig& cfg, bool cut_x = false,
                     bool cut_y = false);

// Representative site per domain: minimizes the maximum internal-graph
// distance to other members; ties broken by smallest site index.
std::vector<int> domain_representatives(const Lattice& lat, const DomainDecomposition& dec);

// Number of connected components of the post-mod-2 simple graph and of the
// pre-mod-2 multigraph (isolated domains count).
int components_post(const DomainGraph& g);
int components_pre(const DomainGraph& g);

// Base-3 digit string for a configuration, site 0 first (x=0,y=1,z=2).
std::string config_to_string(const OutcomeConfig& cfg);
OutcomeConfig config_from_string(const std::string& s);

}  // namespace aklt
