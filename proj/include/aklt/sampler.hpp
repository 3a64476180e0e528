#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"
#include "aklt/rng.hpp"

namespace aklt {

// Parameters for one Metropolis chain over outcome configurations with
// stationary weight 2^(|V| - |E-pre|). All randomness comes from `seed`;
// identical (lattice, params) reproduce the stream bit for bit.
struct ChainParams {
  uint64_t seed = 0;
  long long warmup_sweeps = 1000;
  long long sweeps = 0;      // measured sweeps after warmup
  long long interval = 10;   // sweeps between recorded samples
  bool use_initial = false;  // start from `initial` instead of a random draw
  OutcomeConfig initial;
};

// Single-flip Metropolis sampler. A proposal re-labels one site with one of
// the two other axes (probability 1/2 each) and accepts with min(1, 2^delta),
// where delta is the exact integer change of |V| - |E-pre|. The change is
// computed locally: flipping a site only splits its old domain, merges the
// neighboring domains of the new axis, and retypes its incident edges.
class MetropolisChain {
 public:
  MetropolisChain(const Lattice& lat, const ChainParams& params);

  // One update at `site`; returns true when the flip was accepted.
  // Proposals that would zero the weight are always rejected.
  bool propose_and_accept(int site);

  // One sweep = num_sites proposals at uniformly random sites.
  void sweep();

  const OutcomeConfig& config() const { return cfg_; }
  long long log2_weight() const { return log2w_; }
  long long accepted() const { return accepted_; }
  long long proposed() const { return proposed_; }

 private:
  long long delta_log2_weight(int site, Axis to) const;
  // Number of distinct same-axis connected components among the `axis`
  // neighbors of `site` when `site` itself is treated as absent.
  int adjacent_component_count(int site, Axis axis) const;

  const Lattice& lat_;
  OutcomeConfig cfg_;
  Rng rng_;
  long long log2w_ = 0;
  long long accepted_ = 0;
  long long proposed_ = 0;
  std::vector<long long> axis_count_;
  // Only a non-bipartite lattice (the odd periodic chain) has a zero-weight
  // configuration, and there it is exactly the all-equal one.
  bool forbid_all_equal_ = false;
  mutable std::vector<int64_t> mark_;
  mutable int64_t stamp_ = 0;
  mutable std::vector<int> queue_;
};

struct Sample {
  long long sweep = 0;  // measured-sweep index, 1-based, warmup excluded
  OutcomeConfig config;
};

struct SampleStream {
  std::vector<Sample> samples;
  long long accepted = 0;
  long long proposed = 0;
};

// Runs warmup, then `params.sweeps` measured sweeps, invoking `record` after
// every `params.interval`-th measured sweep. Returns (accepted, proposed).
std::pair<long long, long long> run_chain(
    const Lattice& lat, const ChainParams& params,
    const std::function<void(long long, const MetropolisChain&)>& record);

// Convenience wrapper that stores configuration snapshots.
SampleStream collect_samples(const Lattice& lat, const ChainParams& params);

}  // namespace aklt
