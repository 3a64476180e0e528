#include "aklt/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace aklt {

namespace {

// BFS 2-coloring over the site graph; parallel edges are harmless.
bool lattice_is_bipartite(const Lattice& lat) {
  std::vector<int> color(lat.num_sites, -1);
  std::vector<int> queue;
  for (int s = 0; s < lat.num_sites; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      for (int eid : lat.incident[v]) {
        const int w = lat.other_end(eid, v);
        if (color[w] < 0) {
          color[w] = color[v] ^ 1;
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

MetropolisChain::MetropolisChain(const Lattice& lat, const ChainParams& params)
    : lat_(lat),
      rng_(make_rng(params.seed)),
      mark_(lat.num_sites, 0),
      queue_() {
  if (params.warmup_sweeps < 0) throw std::invalid_argument("warmup_sweeps must be >= 0");
  if (params.interval < 1) throw std::invalid_argument("interval must be >= 1");

  if (!lattice_is_bipartite(lat_)) {
    if (lat_.kind != LatticeKind::Chain1D)
      throw std::logic_error("non-bipartite lattice outside the odd periodic chain");
    forbid_all_equal_ = true;
  }

  if (params.use_initial) {
    if (static_cast<int>(params.initial.size()) != lat_.num_sites)
      throw std::invalid_argument("initial configuration has the wrong size");
    cfg_ = params.initial;
    const auto d = decompose(lat_, cfg_);
    if (!d.log2w)
      throw std::invalid_argument("initial configuration has zero weight");
    log2w_ = *d.log2w;
  } else {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      cfg_.resize(lat_.num_sites);
      for (int s = 0; s < lat_.num_sites; ++s)
        cfg_[s] = static_cast<Axis>(uniform_below(rng_, 3));
      const auto d = decompose(lat_, cfg_);
      if (d.log2w) {
        log2w_ = *d.log2w;
        break;
      }
      if (attempt == 999)
        throw std::logic_error("could not draw a positive-weight initial configuration");
    }
  }

  axis_count_.assign(3, 0);
  for (Axis a : cfg_) ++axis_count_[static_cast<int>(a)];
}

int MetropolisChain::adjacent_component_count(int site, Axis axis) const {
  int comps = 0;
  ++stamp_;
  mark_[site] = stamp_;  // treat the flipped site as absent
  for (int eid : lat_.incident[site]) {
    const int seed = lat_.other_end(eid, site);
    if (cfg_[seed] != axis || mark_[seed] == stamp_) continue;
    ++comps;
    mark_[seed] = stamp_;
    queue_.assign(1, seed);
    while (!queue_.empty()) {
      const int v = queue_.back();
      queue_.pop_back();
      for (int e2 : lat_.incident[v]) {
        const int w = lat_.other_end(e2, v);
        if (cfg_[w] != axis || mark_[w] == stamp_) continue;
        mark_[w] = stamp_;
        queue_.push_back(w);
      }
    }
  }
  return comps;
}

long long MetropolisChain::delta_log2_weight(int site, Axis to) const {
  const Axis from = cfg_[site];
  long long d_internal = 0;
  for (int eid : lat_.incident[site]) {
    const Axis na = cfg_[lat_.other_end(eid, site)];
    if (na == to) ++d_internal;
    if (na == from) --d_internal;
  }
  // Domain count: the old domain sheds the site and splits into `splits`
  // parts, while the site and the `merges` adjacent new-axis domains fuse.
  const int splits = adjacent_component_count(site, from);
  const int merges = adjacent_component_count(site, to);
  return (splits - merges) + d_internal;
}

bool MetropolisChain::propose_and_accept(int site) {
  ++proposed_;
  const Axis from = cfg_[site];
  const int step = 1 + static_cast<int>(uniform_below(rng_, 2));
  const Axis to = static_cast<Axis>((static_cast<int>(from) + step) % 3);

  if (forbid_all_equal_ &&
      axis_count_[static_cast<int>(to)] + 1 == lat_.num_sites)
    return false;

  const long long delta = delta_log2_weight(site, to);
  if (delta < 0 && uniform01(rng_) >= std::ldexp(1.0, static_cast<int>(delta)))
    return false;

  cfg_[site] = to;
  --axis_count_[static_cast<int>(from)];
  ++axis_count_[static_cast<int>(to)];
  log2w_ += delta;
  ++accepted_;
  return true;
}

void MetropolisChain::sweep() {
  for (int i = 0; i < lat_.num_sites; ++i)
    propose_and_accept(static_cast<int>(uniform_below(rng_, lat_.num_sites)));
}

std::pair<long long, long long> run_chain(
    const Lattice& lat, const ChainParams& params,
    const std::function<void(long long, const MetropolisChain&)>& record) {
  MetropolisChain chain(lat, params);
  for (long long s = 0; s < params.warmup_sweeps; ++s) chain.sweep();
  for (long long s = 1; s <= params.sweeps; ++s) {
    chain.sweep();
    if (s % params.interval == 0) record(s, chain);
  }
  return {chain.accepted(), chain.proposed()};
}

SampleStream collect_samples(const Lattice& lat, const ChainParams& params) {
  SampleStream stream;
  const auto totals =
      run_chain(lat, params, [&](long long s, const MetropolisChain& chain) {
        stream.samples.push_back({s, chain.config()});
      });
  stream.accepted = totals.first;
  stream.proposed = totals.second;
  return stream;
}

}  // namespace aklt
