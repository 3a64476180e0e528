#include "aklt/percolation.hpp"

#include <cmath>
#include <stdexcept>

namespace aklt {

EmbeddedGraph embed_for_percolation(const Lattice& lat, const OutcomeConfig& cfg) {
  // Both wrap seams are cut open, so crossings must run through the bulk of
  // the planar patch in either direction.
  const DomainDecomposition dec = label_domains(lat, cfg, /*cut_x=*/true, /*cut_y=*/true);
  const DomainGraph dg = build_domain_graph(lat, dec);

  EmbeddedGraph g;
  g.V = dg.V;
  g.edges = dg.edges_post;
  g.adj.assign(g.V, {});
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    g.adj[g.edges[e].first].push_back({g.edges[e].second, e});
    g.adj[g.edges[e].second].push_back({g.edges[e].first, e});
  }
  g.at_left.assign(g.V, 0);
  g.at_right.assign(g.V, 0);
  g.at_top.assign(g.V, 0);
  g.at_bottom.assign(g.V, 0);
  const bool honey = lat.kind == LatticeKind::Honeycomb;
  const int cols = honey ? lat.L : lat.num_sites;
  const int rows = honey ? lat.L : 1;
  for (int s = 0; s < lat.num_sites; ++s) {
    const int d = dec.domain_of[s];
    if (lat.col(s) == 0) g.at_left[d] = 1;
    if (lat.col(s) == cols - 1) g.at_right[d] = 1;
    if (lat.row(s) == 0) g.at_top[d] = 1;
    if (lat.row(s) == rows - 1) g.at_bottom[d] = 1;
  }
  return g;
}

namespace {

// BFS from every alive start vertex; true when an alive end vertex is
// reachable through alive vertices and edges.
template <class VertexAlive, class EdgeAlive>
bool crossing_exists(const EmbeddedGraph& g, const std::vector<char>& at_start,
                     const std::vector<char>& at_end, const VertexAlive& vertex_alive,
                     const EdgeAlive& edge_alive, std::vector<char>& seen,
                     std::vector<int>& queue) {
  seen.assign(g.V, 0);
  queue.clear();
  for (int v = 0; v < g.V; ++v)
    if (at_start[v] && vertex_alive(v)) {
      seen[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    if (at_end[v]) return true;
    for (const auto& [w, e] : g.adj[v]) {
      if (seen[w] || !edge_alive(e) || !vertex_alive(w)) continue;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return false;
}

}  // namespace

std::vector<char> spanning_under_dilution(const EmbeddedGraph& g, DilutionMode mode,
                                          SpanRequirement require,
                                          const std::vector<double>& p_grid, Rng& rng) {
  const size_t n_items = mode == DilutionMode::Site ? g.V : g.edges.size();
  std::vector<double> u(n_items);
  for (auto& x : u) x = uniform01(rng);

  std::vector<char> result(p_grid.size(), 0);
  std::vector<char> seen(g.V);
  std::vector<int> queue;
  for (size_t pi = 0; pi < p_grid.size(); ++pi) {
    const double p = p_grid[pi];
    const auto vertex_alive = [&](int v) {
      return mode != DilutionMode::Site || u[v] >= p;
    };
    const auto edge_alive = [&](int e) {
      return mode != DilutionMode::Bond || u[e] >= p;
    };

    bool spans = true;
    if (require != SpanRequirement::Vertical)
      spans = crossing_exists(g, g.at_left, g.at_right, vertex_alive, edge_alive, seen, queue);
    if (spans && require != SpanRequirement::Horizontal)
      spans = crossing_exists(g, g.at_top, g.at_bottom, vertex_alive, edge_alive, seen, queue);
    result[pi] = spans ? 1 : 0;
    // Coupled deletions only grow with p; once spanning fails it stays failed.
    if (!spans) break;
  }
  return result;
}

PercolationAccumulator::PercolationAccumulator(DilutionSpec spec) : spec_(std::move(spec)) {
  if (spec_.p_grid.empty())
    throw std::invalid_argument("percolation: empty p-grid");
  for (size_t i = 0; i + 1 < spec_.p_grid.size(); ++i)
    if (!(spec_.p_grid[i] < spec_.p_grid[i + 1]))
      throw std::invalid_argument("percolation: p-grid must be strictly ascending");
  for (double p : spec_.p_grid)
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("percolation: deletion probability outside [0,1]");
  if (spec_.replicates < 1)
    throw std::invalid_argument("percolation: replicates must be >= 1");
  spanning_counts_.assign(spec_.p_grid.size(), 0);
}

void PercolationAccumulator::add_config(const Lattice& lat, const OutcomeConfig& cfg) {
  const EmbeddedGraph g = embed_for_percolation(lat, cfg);
  Rng rng = make_rng(derive_stream(spec_.seed, 1, static_cast<uint64_t>(num_configs_)));
  for (int rep = 0; rep < spec_.replicates; ++rep) {
    const std::vector<char> spans =
        spanning_under_dilution(g, spec_.mode, spec_.require, spec_.p_grid, rng);
    for (size_t pi = 0; pi < spans.size(); ++pi) spanning_counts_[pi] += spans[pi];
  }
  ++num_configs_;
}

PercolationCurve PercolationAccumulator::curve() const {
  if (num_configs_ == 0)
    throw std::runtime_error("percolation: no configurations accumulated");
  PercolationCurve out;
  out.mode = spec_.mode;
  const long long trials = num_configs_ * spec_.replicates;
  out.points.resize(spec_.p_grid.size());
  for (size_t pi = 0; pi < spec_.p_grid.size(); ++pi) {
    PercolationPoint& pt = out.points[pi];
    pt.p_delete = spec_.p_grid[pi];
    pt.spanning = spanning_counts_[pi];
    pt.trials = trials;
    pt.p_cluster = static_cast<double>(pt.spanning) / static_cast<double>(trials);
    pt.err = std::sqrt(pt.p_cluster * (1.0 - pt.p_cluster) / static_cast<double>(trials));
  }
  return out;
}

ThresholdEstimate estimate_threshold(const PercolationCurve& curve) {
  const auto& pts = curve.points;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double y0 = pts[i].p_cluster, y1 = pts[i + 1].p_cluster;
    if (!(y0 >= 0.5 && y1 < 0.5)) continue;
    if (!(y0 > y1))
      throw std::runtime_error("percolation: flat segment at the 1/2 crossing");
    const double x0 = pts[i].p_delete, x1 = pts[i + 1].p_delete;
    const double dy = y1 - y0, dx = x1 - x0;
    ThresholdEstimate est;
    est.p_delete_cross = x0 + (0.5 - y0) * dx / dy;
    // Propagate the two points' binomial errors through the interpolation.
    const double d_dy0 = dx * (0.5 - y1) / (dy * dy);
    const double d_dy1 = -dx * (0.5 - y0) / (dy * dy);
    est.err = std::sqrt(d_dy0 * d_dy0 * pts[i].err * pts[i].err +
                        d_dy1 * d_dy1 * pts[i + 1].err * pts[i + 1].err);
    return est;
  }
  throw std::runtime_error("percolation: spanning curve never crosses 1/2");
}

}  // namespace aklt
