#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"
#include "aklt/rng.hpp"

namespace aklt {

enum class DilutionMode { Site, Bond };

// Which boundary pairs a surviving cluster must connect. Both is the
// spanning-cluster notion used for threshold estimates; the single-direction
// requirements are kept for diagnostics.
enum class SpanRequirement { Horizontal, Vertical, Both };

struct DilutionSpec {
  DilutionMode mode = DilutionMode::Site;
  SpanRequirement require = SpanRequirement::Both;
  std::vector<double> p_grid;  // deletion probabilities, strictly ascending
  int replicates = 16;         // dilution draws per sampled configuration
  uint64_t seed = 0;
};

// Domain graph prepared for dilution: post-mod-2 adjacency with both wrap
// seams cut open (the sample is treated as a planar patch), plus flags for
// domains holding a site in the first or last column resp. row.
struct EmbeddedGraph {
  int V = 0;
  std::vector<std::pair<int, int>> edges;           // post-mod-2, a < b
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge id)
  std::vector<char> at_left, at_right, at_top, at_bottom;
};

EmbeddedGraph embed_for_percolation(const Lattice& lat, const OutcomeConfig& cfg);

// One dilution replicate, coupled across the whole grid: a single uniform is
// drawn per vertex (Site) or edge (Bond) and an element is deleted at
// deletion probability p exactly when its uniform is below p. Deletion sets
// therefore grow with p and the returned spanning indicators are
// non-increasing along the grid.
std::vector<char> spanning_under_dilution(const EmbeddedGraph& g, DilutionMode mode,
                                          SpanRequirement require,
                                          const std::vector<double>& p_grid, Rng& rng);

struct PercolationPoint {
  double p_delete = 0;
  double p_cluster = 0;  // fraction of (configuration, replicate) trials spanning
  double err = 0;        // binomial error
  long long spanning = 0;
  long long trials = 0;
};

struct PercolationCurve {
  DilutionMode mode = DilutionMode::Site;
  std::vector<PercolationPoint> points;
};

// Accumulates spanning counts over sampled configurations. Replicate draws
// are derived from (seed, configuration index), so results do not depend on
// when curve() is called. Throws std::invalid_argument on an empty or
// unsorted p-grid, or when replicates < 1.
class PercolationAccumulator {
 public:
  explicit PercolationAccumulator(DilutionSpec spec);

  void add_config(const Lattice& lat, const OutcomeConfig& cfg);

  long long num_configs() const { return num_configs_; }

  // Throws std::runtime_error when no configuration was added.
  PercolationCurve curve() const;

 private:
  DilutionSpec spec_;
  long long num_configs_ = 0;
  std::vector<long long> spanning_counts_;
};

// Deletion probability where the spanning fraction crosses 1/2, linearly
// interpolated between the two bracketing grid points, with the binomial
// errors of those points propagated through the interpolation. Throws
// std::runtime_error when the curve never crosses 1/2.
struct ThresholdEstimate {
  double p_delete_cross = 0;
  double err = 0;
};

ThresholdEstimate estimate_threshold(const PercolationCurve& curve);

}  // namespace aklt
