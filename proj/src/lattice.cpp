#include "aklt/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace aklt {

namespace {

// Normalize endpoint order to u <= v, keeping slots attached to the right
// endpoint. Wrap flags are orientation-free.
Edge make_edge(int a, int a_slot, int b, int b_slot, bool wrap_x, bool wrap_y) {
  Edge e;
  if (a <= b) {
    e.u = a; e.u_slot = a_slot; e.v = b; e.v_slot = b_slot;
  } else {
    e.u = b; e.u_slot = b_slot; e.v = a; e.v_slot = a_slot;
  }
  e.wrap_x = wrap_x;
  e.wrap_y = wrap_y;
  return e;
}

void build_chain(Lattice& lat) {
  const int n = lat.L;
  lat.num_sites = n;
  lat.qubits_per_site = 2;
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) {
      lat.edges.push_back(make_edge(i, 1, i + 1, 0, false, false));
    } else if (lat.boundary == Boundary::Periodic) {
      lat.edges.push_back(make_edge(n - 1, 1, 0, 0, true, false));
    }
  }
  if (lat.boundary == Boundary::Open) {
    lat.terminators.push_back({0, 0});
    lat.terminators.push_back({n - 1, 1});
  }
}

void build_honeycomb(Lattice& lat) {
  const int L = lat.L;
  lat.num_sites = L * L;
  lat.qubits_per_site = 3;
  const bool periodic = lat.boundary == Boundary::Periodic;
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      const int s = r * L + c;
      if (c + 1 < L) {
        lat.edges.push_back(make_edge(s, 1, s + 1, 0, false, false));
      } else if (periodic) {
        lat.edges.push_back(make_edge(s, 1, r * L, 0, true, false));
      }
      // Vertical bond owned by the (r+c)-even endpoint, pointing down.
      if (((r + c) & 1) == 0) {
        if (r + 1 < L) {
          lat.edges.push_back(make_edge(s, 2, s + L, 2, false, false));
        } else if (periodic) {
          lat.edges.push_back(make_edge(s, 2, c, 2, false, true));
        }
      }
    }
  }
  if (!periodic) {
    for (int r = 0; r < L; ++r) {
      for (int c = 0; c < L; ++c) {
        const int s = r * L + c;
        if (c == 0) lat.terminators.push_back({s, 0});
        if (c == L - 1) lat.terminators.push_back({s, 1});
        const bool even = ((r + c) & 1) == 0;
        if ((even && r == L - 1) || (!even && r == 0)) lat.terminators.push_back({s, 2});
      }
    }
  }
}

}  // namespace

void build_incident(Lattice& lat) {
  lat.incident.assign(lat.num_sites, {});
  for (int e = 0; e < static_cast<int>(lat.edges.size()); ++e) {
    lat.incident[lat.edges[e].u].push_back(e);
    lat.incident[lat.edges[e].v].push_back(e);
  }
}

Lattice make_lattice(LatticeKind kind, int L, Boundary boundary) {
  if (kind == LatticeKind::Patch)
    throw std::invalid_argument("patch lattices are built via make_patch");
  if (L < 2) throw std::invalid_argument("lattice size must be at least 2");
  if (kind == LatticeKind::Honeycomb && boundary == Boundary::Periodic && (L % 2) != 0)
    throw std::invalid_argument("periodic honeycomb requires even L");
  Lattice lat;
  lat.kind = kind;
  lat.boundary = boundary;
  lat.L = L;
  if (kind == LatticeKind::Chain1D)
    build_chain(lat);
  else
    build_honeycomb(lat);
  build_incident(lat);
  return lat;
}

Lattice make_patch(int num_sites, int qubits_per_site,
                   const std::vector<std::pair<int, int>>& site_edges) {
  if (num_sites < 1) throw std::invalid_argument("patch needs at least one site");
  if (qubits_per_site != 2 && qubits_per_site != 3)
    throw std::invalid_argument("patch qubits_per_site must be 2 or 3");
  Lattice lat;
  lat.kind = LatticeKind::Patch;
  lat.boundary = Boundary::Open;
  lat.L = 0;
  lat.num_sites = num_sites;
  lat.qubits_per_site = qubits_per_site;

  std::vector<int> next_slot(num_sites, 0);
  for (auto [a, b] : site_edges) {
    if (a < 0 || a >= num_sites || b < 0 || b >= num_sites)
      throw std::invalid_argument("patch edge endpoint out of range");
    if (a == b) throw std::invalid_argument("patch self-loops are not supported");
    if (next_slot[a] >= qubits_per_site || next_slot[b] >= qubits_per_site)
      throw std::invalid_argument("patch site degree exceeds qubits_per_site");
    lat.edges.push_back(make_edge(a, next_slot[a]++, b, next_slot[b]++, false, false));
  }
  for (int s = 0; s < num_sites; ++s)
    for (int slot = next_slot[s]; slot < qubits_per_site; ++slot)
      lat.terminators.push_back({s, slot});
  build_incident(lat);

  // BFS 2-coloring; component roots get color 0.
  lat.patch_color.assign(num_sites, -1);
  for (int root = 0; root < num_sites; ++root) {
    if (lat.patch_color[root] >= 0) continue;
    lat.patch_color[root] = 0;
    std::vector<int> queue{root};
    while (!queue.empty()) {
      const int s = queue.back();
      queue.pop_back();
      for (int e : lat.incident[s]) {
        const int t = lat.other_end(e, s);
        if (lat.patch_color[t] < 0) {
          lat.patch_color[t] = lat.patch_color[s] ^ 1;
          queue.push_back(t);
        } else if (lat.patch_color[t] == lat.patch_color[s]) {
          throw std::invalid_argument("patch graph is not bipartite");
        }
      }
    }
  }
  return lat;
}

LatticeKind parse_lattice_kind(const std::string& s) {
  if (s == "chain1d") return LatticeKind::Chain1D;
  if (s == "honeycomb") return LatticeKind::Honeycomb;
  if (s == "patch") return LatticeKind::Patch;
  throw std::invalid_argument("unknown lattice kind: " + s);
}

Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "open") return Boundary::Open;
  throw std::invalid_argument("unknown boundary: " + s);
}

std::string to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::Chain1D: return "chain1d";
    case LatticeKind::Honeycomb: return "honeycomb";
    default: return "patch";
  }
}

std::string to_string(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "open";
}

}  // namespace aklt
