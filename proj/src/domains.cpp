#include "aklt/domains.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace aklt {

namespace {

int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

bool edge_cut(const Edge& e, bool cut_x, bool cut_y) {
  return (cut_x && e.wrap_x) || (cut_y && e.wrap_y);
}

}  // namespace

DomainDecomposition label_domains(const Lattice& lat, const OutcomeConfig& cfg,
                                  bool cut_x, bool cut_y) {
  if (static_cast<int>(cfg.size()) != lat.num_sites)
    throw std::invalid_argument("configuration size does not match lattice");
  std::vector<int> parent(lat.num_sites);
  std::iota(parent.begin(), parent.end(), 0);
  for (const Edge& e : lat.edges) {
    if (edge_cut(e, cut_x, cut_y)) continue;
    if (cfg[e.u] != cfg[e.v]) continue;
    int ru = uf_find(parent, e.u), rv = uf_find(parent, e.v);
    if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
  }
  DomainDecomposition dec;
  dec.cut_x = cut_x;
  dec.cut_y = cut_y;
  dec.domain_of.assign(lat.num_sites, -1);
  for (int s = 0; s < lat.num_sites; ++s) {
    int r = uf_find(parent, s);
    if (dec.domain_of[r] < 0) {
      dec.domain_of[r] = dec.num_domains++;
      dec.axis.push_back(cfg[s]);
    }
    dec.domain_of[s] = dec.domain_of[r];
  }
  dec.members.assign(dec.num_domains, {});
  for (int s = 0; s < lat.num_sites; ++s) dec.members[dec.domain_of[s]].push_back(s);
  return dec;
}

DomainGraph build_domain_graph(const Lattice& lat, const DomainDecomposition& dec) {
  DomainGraph g;
  g.V = dec.num_domains;
  std::map<std::pair<int, int>, int> mult;
  for (const Edge& e : lat.edges) {
    if (edge_cut(e, dec.cut_x, dec.cut_y)) continue;
    int a = dec.domain_of[e.u], b = dec.domain_of[e.v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    ++mult[{a, b}];
    ++g.e_pre_total;
  }
  g.adj_post.assign(g.V, {});
  for (const auto& [pair, m] : mult) {
    g.edges_pre.push_back({pair, m});
    if (m & 1) {
      g.edges_post.push_back(pair);
      g.adj_post[pair.first].push_back(pair.second);
      g.adj_post[pair.second].push_back(pair.first);
    }
  }
  return g;
}

std::optional<long long> log2_weight(const Lattice& lat, const DomainDecomposition& dec,
                                     const DomainGraph& g) {
  // Two-color each domain's internal bond graph; an odd internal cycle
  // makes the configuration amplitude vanish.
  std::vector<int8_t> color(lat.num_sites, -1);
  std::vector<int> stack;
  for (int d = 0; d < dec.num_domains; ++d) {
    const int start = dec.members[d][0];
    if (color[start] >= 0) continue;
    color[start] = 0;
    stack.push_back(start);
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (int eid : lat.incident[s]) {
        const Edge& e = lat.edges[eid];
        if (edge_cut(e, dec.cut_x, dec.cut_y)) continue;
        int t = lat.other_end(eid, s);
        if (dec.domain_of[t] != d) continue;
        if (color[t] < 0) {
          color[t] = 1 - color[s];
          stack.push_back(t);
        } else if (color[t] == color[s]) {
          return std::nullopt;
        }
      }
    }
  }
  return static_cast<long long>(g.V) - g.e_pre_total;
}

Decomposed decompose(const Lattice& lat, const OutcomeConfig& cfg, bool cut_x, bool cut_y) {
  Decomposed d;
  d.dec = label_domains(lat, cfg, cut_x, cut_y);
  d.graph = build_domain_graph(lat, d.dec);
  d.log2w = log2_weight(lat, d.dec, d.graph);
  return d;
}

std::vector<int> domain_representatives(const Lattice& lat, const DomainDecomposition& dec) {
  std::vector<int> rep(dec.num_domains, -1);
  std::vector<int> dist(lat.num_sites, -1);
  std::queue<int> q;
  for (int d = 0; d < dec.num_domains; ++d) {
    const auto& mem = dec.members[d];
    if (mem.size() == 1) {
      rep[d] = mem[0];
      continue;
    }
    int best = -1, best_ecc = 0;
    for (int src : mem) {
      for (int s : mem) dist[s] = -1;
      dist[src] = 0;
      q.push(src);
      int ecc = 0;
      while (!q.empty()) {
        int s = q.front();
        q.pop();
        ecc = std::max(ecc, dist[s]);
        for (int eid : lat.incident[s]) {
          const Edge& e = lat.edges[eid];
          if (edge_cut(e, dec.cut_x, dec.cut_y)) continue;
          int t = lat.other_end(eid, s);
          if (dec.domain_of[t] != d || dist[t] >= 0) continue;
          dist[t] = dist[s] + 1;
          q.push(t);
        }
      }
      if (best < 0 || ecc < best_ecc) {
        best = src;
        best_ecc = ecc;
      }
    }
    rep[d] = best;
  }
  return rep;
}

namespace {

int count_components(int V, const std::vector<std::vector<int>>& adj) {
  std::vector<char> seen(V, 0);
  std::vector<int> stack;
  int comps = 0;
  for (int v = 0; v < V; ++v) {
    if (seen[v]) continue;
    ++comps;
    seen[v] = 1;
    stack.push_back(v);
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (int t : adj[s])
        if (!seen[t]) {
          seen[t] = 1;
          stack.push_back(t);
        }
    }
  }
  return comps;
}

}  // namespace

int components_post(const DomainGraph& g) { return count_components(g.V, g.adj_post); }

int components_pre(const DomainGraph& g) {
  std::vector<std::vector<int>> adj(g.V);
  for (const auto& [pair, m] : g.edges_pre) {
    adj[pair.first].push_back(pair.second);
    adj[pair.second].push_back(pair.first);
  }
  return count_components(g.V, adj);
}

std::string config_to_string(const OutcomeConfig& cfg) {
  std::string s(cfg.size(), '0');
  for (size_t i = 0; i < cfg.size(); ++i) s[i] = static_cast<char>('0' + static_cast<int>(cfg[i]));
  return s;
}

OutcomeConfig config_from_string(const std::string& s) {
  OutcomeConfig cfg(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '2') throw std::invalid_argument("bad configuration digit");
    cfg[i] = static_cast<Axis>(s[i] - '0');
  }
  return cfg;
}

}  // namespace aklt
