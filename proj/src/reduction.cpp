#include "aklt/reduction.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <deque>
#include <unordered_set>

namespace aklt {

int reduction_scale(int L, double l_constant) {
  if (L < 2) return 2;
  const int l = static_cast<int>(std::ceil(l_constant * std::log(static_cast<double>(L))));
  return std::max(2, l);
}

int reduction_grid_size(int L, int l) {
  if (l < 1 || L < l) return 0;
  return (L - l) / (4 * l) + 1;
}

namespace {

struct Rect {
  int row0 = 0, row1 = 0, col0 = 0, col1 = 0;  // half-open
};

std::string rect_str(const Rect& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "rows [%d,%d) cols [%d,%d)", r.row0, r.row1, r.col0, r.col1);
  return buf;
}

void set_failure(ReductionFailure* fail, std::string stage, std::string message) {
  if (fail) *fail = {std::move(stage), std::move(message)};
}

bool post_adjacent(const DomainGraph& g, int a, int b) {
  const auto& nb = g.adj_post[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

// Highest post-degree domain with a member site in the box that is not
// banned; ties broken by the nearest member site's distance to the box
// center, then by id.
int pick_hub(const Lattice& lat, const DomainDecomposition& dec, const DomainGraph& g,
             const Rect& box, const std::vector<char>& banned) {
  const int c2r = box.row0 + box.row1 - 1;  // doubled center coordinates
  const int c2c = box.col0 + box.col1 - 1;
  int best = -1, best_deg = -1, best_dist = 0;
  for (int row = box.row0; row < box.row1; ++row)
    for (int col = box.col0; col < box.col1; ++col) {
      const int d = dec.domain_of[row * lat.L + col];
      if (banned[d]) continue;
      const int deg = static_cast<int>(g.adj_post[d].size());
      const int dist = std::abs(2 * row - c2r) + std::abs(2 * col - c2c);
      const bool better = deg > best_deg ||
                          (deg == best_deg &&
                           (dist < best_dist || (dist == best_dist && d < best)));
      if (best < 0 || better) {
        best = d;
        best_deg = deg;
        best_dist = dist;
      }
    }
  return best;
}

}  // namespace

CarveResult carve_net(const Lattice& lat, const DomainDecomposition& dec,
                      const DomainGraph& g, int l) {
  CarveResult out;
  if (lat.kind != LatticeKind::Honeycomb) {
    out.failure = {"plan", "net carving needs a honeycomb lattice"};
    return out;
  }
  const int L = lat.L;
  const int lp = reduction_grid_size(L, l);
  if (lp < 2) {
    out.failure = {"plan",
                   "grid would have fewer than 2 nodes at l = " + std::to_string(l) +
                       ", L = " + std::to_string(L)};
    return out;
  }

  const auto node_box = [&](int i, int j) {
    return Rect{4 * l * i, 4 * l * i + l, 4 * l * j, 4 * l * j + l};
  };
  const auto node_str = [&](int n) {
    return "(" + std::to_string(n / lp) + "," + std::to_string(n % lp) + ")";
  };

  // A failed attempt bans the hub vertices involved and re-picks; bans are
  // monotone, so the retry loop makes progress and always terminates.
  std::vector<char> banned(g.V, 0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    NetLayout net;
    net.l = l;
    net.lambda_prime = lp;
    net.hub.assign(static_cast<size_t>(lp) * lp, -1);
    net.wire_right.assign(static_cast<size_t>(lp) * lp, {});
    net.wire_down.assign(static_cast<size_t>(lp) * lp, {});
    net.in_net.assign(g.V, 0);

    for (int n = 0; n < lp * lp; ++n) {
      net.hub[n] = pick_hub(lat, dec, g, node_box(n / lp, n % lp), banned);
      if (net.hub[n] < 0) {
        out.failure = {"carve", "hub candidates exhausted at node " + node_str(n)};
        return out;
      }
    }

    bool retry = false;
    for (int a = 0; a < lp * lp && !retry; ++a)
      for (int b = a + 1; b < lp * lp && !retry; ++b) {
        if (net.hub[a] == net.hub[b]) {
          out.failure = {"carve", "hub collision between nodes " + node_str(a) + " and " +
                                      node_str(b)};
          banned[net.hub[a]] = 1;
          retry = true;
        } else if (post_adjacent(g, net.hub[a], net.hub[b])) {
          out.failure = {"carve", "adjacent hubs at nodes " + node_str(a) + " and " +
                                      node_str(b)};
          banned[net.hub[a]] = 1;
          banned[net.hub[b]] = 1;
          retry = true;
        }
      }
    if (retry) continue;

    // Wire routing state: interiors of routed wires and everything adjacent
    // to them are blocked for later wires, which keeps distinct wires at
    // graph distance >= 2 and the carved net an induced skeleton.
    std::vector<char> blocked(g.V, 0);
    std::vector<char> in_rect(g.V, 0);
    std::vector<char> hub_flag(g.V, 0);
    for (int n = 0; n < lp * lp; ++n) {
      net.in_net[net.hub[n]] = 1;
      hub_flag[net.hub[n]] = 1;
    }

    const auto route_wire = [&](int hub_a, int hub_b, const Rect& corridor,
                                std::vector<int>& path_out) {
      std::fill(in_rect.begin(), in_rect.end(), 0);
      for (int row = corridor.row0; row < corridor.row1; ++row)
        for (int col = corridor.col0; col < corridor.col1; ++col)
          in_rect[dec.domain_of[row * L + col]] = 1;

      std::vector<char> foreign_hub_nbr(g.V, 0);
      for (int n = 0; n < lp * lp; ++n) {
        const int h = net.hub[n];
        if (h == hub_a || h == hub_b) continue;
        for (int nb : g.adj_post[h]) foreign_hub_nbr[nb] = 1;
      }

      const auto allowed = [&](int v) {
        if (v == hub_a || v == hub_b) return true;
        return in_rect[v] && !blocked[v] && !hub_flag[v] && !foreign_hub_nbr[v];
      };

      std::vector<int> parent(g.V, -2);
      std::deque<int> queue;
      parent[hub_a] = -1;
      queue.push_back(hub_a);
      while (!queue.empty() && parent[hub_b] == -2) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : g.adj_post[v]) {
          if (parent[w] != -2 || !allowed(w)) continue;
          parent[w] = v;
          queue.push_back(w);
          if (w == hub_b) break;
        }
      }
      if (parent[hub_b] == -2) return false;
      std::vector<int> rev;
      for (int v = hub_b; v != -1; v = parent[v]) rev.push_back(v);
      path_out.assign(rev.rbegin(), rev.rend());
      for (size_t k = 1; k + 1 < path_out.size(); ++k) {
        const int u = path_out[k];
        net.in_net[u] = 1;
        blocked[u] = 1;
        for (int w : g.adj_post[u]) blocked[w] = 1;
      }
      return true;
    };

    // Corridors get a perpendicular margin on both sides: separation of
    // distinct wires is enforced by the blocked zones, not by the corridor
    // shape, so extra width only adds routing room around those zones. When
    // a corridor has no traversing path the margin escalates before the
    // attempt is abandoned.
    const auto clamp0 = [&](int x) { return std::max(0, std::min(x, L)); };
    const auto route_with_margins = [&](int hub_a, int hub_b, bool horizontal, int band,
                                        int along0, int along1, std::vector<int>& path_out,
                                        Rect& last) {
      for (int margin : {l, 2 * l, 4 * l, L}) {
        const int b0 = clamp0(band - margin), b1 = clamp0(band + l + margin);
        last = horizontal ? Rect{b0, b1, along0, along1} : Rect{along0, along1, b0, b1};
        if (route_wire(hub_a, hub_b, last, path_out)) return true;
      }
      return false;
    };
    for (int i = 0; i < lp && !retry; ++i)
      for (int j = 0; j < lp && !retry; ++j) {
        Rect tried;
        if (j + 1 < lp &&
            !route_with_margins(net.hub[i * lp + j], net.hub[i * lp + j + 1],
                                /*horizontal=*/true, 4 * l * i, 4 * l * j, 4 * l * (j + 1) + l,
                                net.wire_right[i * lp + j], tried)) {
          out.failure = {"carve", "no traversing path in corridor (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")-(" + std::to_string(i) +
                                      "," + std::to_string(j + 1) + "), " + rect_str(tried)};
          banned[net.hub[i * lp + j]] = 1;
          banned[net.hub[i * lp + j + 1]] = 1;
          retry = true;
        } else if (i + 1 < lp &&
                   !route_with_margins(net.hub[i * lp + j], net.hub[(i + 1) * lp + j],
                                       /*horizontal=*/false, 4 * l * j, 4 * l * i,
                                       4 * l * (i + 1) + l, net.wire_down[i * lp + j],
                                       tried)) {
          out.failure = {"carve", "no traversing path in corridor (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")-(" + std::to_string(i + 1) +
                                      "," + std::to_string(j) + "), " + rect_str(tried)};
          banned[net.hub[i * lp + j]] = 1;
          banned[net.hub[(i + 1) * lp + j]] = 1;
          retry = true;
        }
      }
    if (!retry) {
      out.ok = true;
      out.net = std::move(net);
      return out;
    }
  }
  return out;
}

void apply_net_carve(RewriteGraph& g, const NetLayout& net) {
  for (int v = 0; v < g.size(); ++v)
    if (g.alive(v) && !net.in_net[v]) g.measure_z(v);
}

bool clean_wire(RewriteGraph& g, std::vector<int>& wire, ReductionFailure* fail) {
  if (!wire.empty() && (!g.alive(wire.front()) || !g.alive(wire.back()))) {
    set_failure(fail, "clean", "wire endpoint is not alive");
    return false;
  }
  std::vector<int> alive;
  for (int v : wire)
    if (g.alive(v)) alive.push_back(v);
  wire = std::move(alive);
  if (wire.size() < 2) return true;

  std::vector<int> pos(g.size(), -1);
  for (size_t i = 0; i < wire.size(); ++i) pos[wire[i]] = static_cast<int>(i);

  std::vector<int> kept;
  kept.push_back(wire[0]);
  int v = 0;
  while (v + 1 < static_cast<int>(wire.size())) {
    int rightmost = -1;
    for (int nb : g.neighbors(wire[v]))
      if (pos[nb] > v) rightmost = std::max(rightmost, pos[nb]);
    if (rightmost < 0) {
      for (int u : wire) pos[u] = -1;
      set_failure(fail, "clean",
                  "wire disconnected at vertex " + std::to_string(wire[v]));
      return false;
    }
    for (int k = v + 1; k < rightmost; ++k) g.measure_z(wire[k]);
    v = rightmost;
    kept.push_back(wire[v]);
  }
  for (int u : wire) pos[u] = -1;
  wire = std::move(kept);
  return true;
}

namespace {

// One obstruction-removal pass toward the junction: `through` is the
// left-to-right ordered union of two wires with the center at j_pos;
// `approach` is the third wire ordered from its far end to the center
// (approach.back() == through[j_pos]). Scans the approach wire from the far
// end for the first vertex with an edge into the through-wire, then applies
// the three-case procedure. Returns false on structural failure; sets
// *changed when a case was applied.
bool junction_pass(RewriteGraph& g, std::vector<int>& through, int& j_pos,
                   std::vector<int>& approach, bool* changed, ReductionFailure* fail) {
  *changed = false;
  std::vector<int> pos(g.size(), -1);
  for (size_t i = 0; i < through.size(); ++i) pos[through[i]] = static_cast<int>(i);
  const auto clear_pos = [&] {
    for (int u : through) pos[u] = -1;
  };

  int v_idx = -1;
  std::vector<int> nbr_idx;
  for (size_t i = 0; i + 1 < approach.size(); ++i) {
    nbr_idx.clear();
    for (int nb : g.neighbors(approach[i]))
      if (pos[nb] >= 0 && pos[nb] != j_pos) nbr_idx.push_back(pos[nb]);
    if (!nbr_idx.empty()) {
      v_idx = static_cast<int>(i);
      // Case analysis also counts an edge to the old center.
      if (g.adjacent(approach[i], through[j_pos])) nbr_idx.push_back(j_pos);
      std::sort(nbr_idx.begin(), nbr_idx.end());
      break;
    }
  }
  if (v_idx < 0) {
    clear_pos();
    return true;
  }
  *changed = true;
  const int v = approach[v_idx];

  // Sever the old route: delete approach vertices strictly between v and the
  // center.
  for (size_t k = v_idx + 1; k + 1 < approach.size(); ++k)
    if (g.alive(approach[k])) g.measure_z(approach[k]);

  if (nbr_idx.size() == 1) {
    // Case 1: v's single through-edge becomes the new attachment.
    j_pos = nbr_idx[0];
    approach.resize(v_idx + 1);
    approach.push_back(through[j_pos]);
    clear_pos();
    return true;
  }

  const bool pair_adjacent =
      nbr_idx.size() == 2 && g.adjacent(through[nbr_idx[0]], through[nbr_idx[1]]);
  if (pair_adjacent) {
    // Case 2: Y at v re-routes the through-wire over v's predecessor.
    if (v_idx == 0) {
      clear_pos();
      set_failure(fail, "clean", "approach wire exhausted at junction vertex " +
                                     std::to_string(v));
      return false;
    }
    const int p = approach[v_idx - 1];
    if (g.degree(v) != 3 || !g.adjacent(v, p)) {
      clear_pos();
      set_failure(fail, "clean", "junction case 2 at vertex " + std::to_string(v) +
                                     " with unexpected neighborhood");
      return false;
    }
    g.measure_y(v);
    through.insert(through.begin() + nbr_idx[1], p);
    j_pos = nbr_idx[1];
    approach.resize(v_idx);  // ends at p, the new center
    clear_pos();
    return true;
  }

  // Case 3: delete everything between v's extremal through-neighbors; v
  // becomes the new center bridging them.
  const int lo = nbr_idx.front(), hi = nbr_idx.back();
  for (int k = lo + 1; k < hi; ++k)
    if (g.alive(through[k])) g.measure_z(through[k]);
  std::vector<int> rebuilt(through.begin(), through.begin() + lo + 1);
  rebuilt.push_back(v);
  rebuilt.insert(rebuilt.end(), through.begin() + hi, through.end());
  clear_pos();
  through = std::move(rebuilt);
  j_pos = lo + 1;
  approach.resize(v_idx + 1);  // ends at v, the new center
  return true;
}

std::vector<int> join_through(const std::vector<int>& left_to_center,
                              const std::vector<int>& right_to_center) {
  std::vector<int> through = left_to_center;
  through.insert(through.end(), right_to_center.rbegin() + 1, right_to_center.rend());
  return through;
}

void split_through(const std::vector<int>& through, int j_pos, std::vector<int>& left_to_center,
                   std::vector<int>& right_to_center) {
  left_to_center.assign(through.begin(), through.begin() + j_pos + 1);
  right_to_center.assign(through.rbegin(), through.rend() - j_pos);
}

bool run_passes(RewriteGraph& g, std::vector<int>& side_a, std::vector<int>& side_b,
                std::vector<int>& approach, ReductionFailure* fail) {
  for (int iter = 0; iter < 16; ++iter) {
    std::vector<int> through = join_through(side_a, side_b);
    int j_pos = static_cast<int>(side_a.size()) - 1;
    bool changed = false;
    if (!junction_pass(g, through, j_pos, approach, &changed, fail)) return false;
    split_through(through, j_pos, side_a, side_b);
    if (!changed) return true;
    if (!clean_wire(g, side_a, fail) || !clean_wire(g, side_b, fail) ||
        !clean_wire(g, approach, fail))
      return false;
  }
  set_failure(fail, "clean", "junction obstructions persist after 16 passes");
  return false;
}

}  // namespace

bool clean_t_junction(RewriteGraph& g, std::vector<int>& w_left, std::vector<int>& w_center,
                      std::vector<int>& w_right, ReductionFailure* fail) {
  if (w_left.empty() || w_center.empty() || w_right.empty() ||
      w_left.back() != w_center.back() || w_center.back() != w_right.back()) {
    set_failure(fail, "clean", "junction wires do not share a center");
    return false;
  }
  if (!clean_wire(g, w_left, fail) || !clean_wire(g, w_center, fail) ||
      !clean_wire(g, w_right, fail))
    return false;
  // Left-center and center-right obstructions, approaching on the center wire.
  if (!run_passes(g, w_left, w_right, w_center, fail)) return false;
  // Remaining left-right obstructions, approaching on the left wire.
  if (!run_passes(g, w_center, w_right, w_left, fail)) return false;
  return true;
}

namespace {

// Every alive edge must connect consecutive vertices of one net wire.
bool net_edges_legal(const RewriteGraph& g, const NetLayout& net, std::string* offending) {
  std::unordered_set<uint64_t> allowed;
  const auto add_path = [&](const std::vector<int>& path) {
    for (size_t k = 0; k + 1 < path.size(); ++k) {
      const uint64_t a = std::min(path[k], path[k + 1]);
      const uint64_t b = std::max(path[k], path[k + 1]);
      allowed.insert(a * static_cast<uint64_t>(g.size()) + b);
    }
  };
  for (const auto& w : net.wire_right) add_path(w);
  for (const auto& w : net.wire_down) add_path(w);
  for (const auto& [a, b] : g.edges()) {
    if (!allowed.count(static_cast<uint64_t>(a) * g.size() + b)) {
      *offending = "illegal edge (" + std::to_string(a) + "," + std::to_string(b) + ")";
      return false;
    }
  }
  return true;
}

}  // namespace

bool clean_wires_and_junctions(RewriteGraph& g, NetLayout& net, ReductionFailure* fail) {
  const int lp = net.lambda_prime;
  for (int n = 0; n < lp * lp; ++n) {
    if (!net.wire_right[n].empty() && !clean_wire(g, net.wire_right[n], fail)) return false;
    if (!net.wire_down[n].empty() && !clean_wire(g, net.wire_down[n], fail)) return false;
  }

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::string offending;
    if (net_edges_legal(g, net, &offending)) return true;

    // Attempt a repair when the obstruction sits at a hub carrying exactly
    // three wires; four-valent hubs are outside the T-junction procedure.
    int repaired = 0;
    for (int n = 0; n < lp * lp && !repaired; ++n) {
      std::vector<std::vector<int>*> bundle;
      const int i = n / lp, j = n % lp;
      if (j + 1 < lp && !net.wire_right[n].empty()) bundle.push_back(&net.wire_right[n]);
      if (i + 1 < lp && !net.wire_down[n].empty()) bundle.push_back(&net.wire_down[n]);
      if (j > 0 && !net.wire_right[n - 1].empty()) bundle.push_back(&net.wire_right[n - 1]);
      if (i > 0 && !net.wire_down[n - lp].empty()) bundle.push_back(&net.wire_down[n - lp]);
      if (bundle.size() != 3) continue;

      // Orient each wire far -> hub.
      const int hub = net.hub[n];
      std::vector<std::vector<int>> oriented(3);
      std::vector<bool> reversed(3);
      bool bundle_has_obstruction = false;
      for (int wdx = 0; wdx < 3; ++wdx) {
        oriented[wdx] = *bundle[wdx];
        reversed[wdx] = oriented[wdx].back() != hub;
        if (reversed[wdx]) std::reverse(oriented[wdx].begin(), oriented[wdx].end());
        if (oriented[wdx].back() != hub) {
          set_failure(fail, "clean", "wire bundle detached from hub " + std::to_string(hub));
          return false;
        }
      }
      // Cross edges between distinct wires of this bundle away from the hub?
      for (int p = 0; p < 3 && !bundle_has_obstruction; ++p)
        for (int q = p + 1; q < 3 && !bundle_has_obstruction; ++q)
          for (size_t x = 0; x + 1 < oriented[p].size() && !bundle_has_obstruction; ++x)
            for (size_t y = 0; y + 1 < oriented[q].size(); ++y)
              if (g.alive(oriented[p][x]) && g.alive(oriented[q][y]) &&
                  g.adjacent(oriented[p][x], oriented[q][y])) {
                bundle_has_obstruction = true;
                break;
              }
      if (!bundle_has_obstruction) continue;

      if (!clean_t_junction(g, oriented[0], oriented[1], oriented[2], fail)) return false;
      net.hub[n] = oriented[0].back();
      for (int wdx = 0; wdx < 3; ++wdx) {
        if (reversed[wdx])
          bundle[wdx]->assign(oriented[wdx].rbegin(), oriented[wdx].rend());
        else
          *bundle[wdx] = oriented[wdx];
      }
      repaired = 1;
    }
    if (!repaired) {
      set_failure(fail, "clean", offending + " outside any three-valent junction bundle");
      return false;
    }
  }
  set_failure(fail, "clean", "net obstructions persist after repair attempts");
  return false;
}

bool merge_along_path(RewriteGraph& g, const std::vector<int>& path, ReductionFailure* fail) {
  const int n = static_cast<int>(path.size());
  if (n < 2) {
    set_failure(fail, "contract", "merge path needs two endpoints");
    return false;
  }
  for (int v : path)
    if (!g.alive(v)) {
      set_failure(fail, "contract", "merge path vertex " + std::to_string(v) + " is dead");
      return false;
    }
  for (int k = 0; k + 1 < n; ++k)
    if (!g.adjacent(path[k], path[k + 1])) {
      set_failure(fail, "contract", "merge path breaks between " + std::to_string(path[k]) +
                                        " and " + std::to_string(path[k + 1]));
      return false;
    }
  for (int k = 1; k + 1 < n; ++k)
    if (g.degree(path[k]) != 2) {
      set_failure(fail, "contract", "merge path interior " + std::to_string(path[k]) +
                                        " is not a plain wire vertex");
      return false;
    }
  const int a = path.front(), b = path.back();
  // The survivor must not already see the merged endpoint's stubs, or the
  // symmetric-difference inheritance would cancel them.
  for (int s : g.neighbors(a))
    if (s != path[1] && (s == b || g.adjacent(s, b))) {
      set_failure(fail, "contract", "stub " + std::to_string(s) +
                                        " already touches the merge target");
      return false;
    }

  if (n == 2) {
    if (g.degree(a) != 2) {
      set_failure(fail, "contract",
                  "adjacent-endpoint merge at " + std::to_string(a) + " needs a single stub");
      return false;
    }
    g.measure_y(a);
    return true;
  }

  std::deque<int> interior(path.begin() + 1, path.end() - 1);
  if (interior.size() % 2 == 0) {
    g.measure_y(interior.front());  // joins a to the next interior vertex
    interior.pop_front();
  }
  int carrier = a;
  while (!interior.empty()) {
    const int mid = interior.front();
    interior.pop_front();
    g.measure_x_pair(carrier, mid);
    if (interior.empty()) break;
    carrier = interior.front();
    interior.pop_front();
  }
  return true;
}

int collapse_ring(RewriteGraph& g, const std::vector<int>& ring,
                  const std::array<int, 4>& junction_pos, ReductionFailure* fail) {
  const int n = static_cast<int>(ring.size());
  for (int k = 0; k < 4; ++k)
    if (junction_pos[k] < 0 || junction_pos[k] >= n ||
        (k > 0 && junction_pos[k] <= junction_pos[k - 1])) {
      set_failure(fail, "contract", "ring junction positions must be ascending and in range");
      return -1;
    }
  for (int k = 0; k < n; ++k)
    if (!g.alive(ring[k]) || !g.adjacent(ring[k], ring[(k + 1) % n])) {
      set_failure(fail, "contract", "ring is not an alive cycle at position " + std::to_string(k));
      return -1;
    }

  const auto [p0, p1, p2, p3] = junction_pos;
  // Open the ring: the arc between the first two junctions is measured away.
  for (int k = p0 + 1; k < p1; ++k) g.measure_z(ring[k]);
  if (g.adjacent(ring[p0], ring[p1])) {
    set_failure(fail, "contract", "ring junctions adjacent after arc removal; larger scale needed");
    return -1;
  }

  const auto reversed_arc = [&](int from_pos, int to_pos) {
    // Walk backwards around the cycle from from_pos to to_pos.
    std::vector<int> path;
    for (int k = from_pos;; k = (k - 1 + n) % n) {
      path.push_back(ring[k]);
      if (k == to_pos) break;
    }
    return path;
  };

  if (!merge_along_path(g, reversed_arc(p0, p3), fail)) return -1;
  if (!merge_along_path(g, reversed_arc(p3, p2), fail)) return -1;
  if (!merge_along_path(g, reversed_arc(p2, p1), fail)) return -1;
  return ring[p1];
}

ContractResult contract_to_grid(RewriteGraph& g, const NetLayout& net) {
  ContractResult out;
  const int lp = net.lambda_prime;

  const auto contract_wire = [&](const std::vector<int>& stored, const std::string& name) {
    std::vector<int> path;
    for (int v : stored)
      if (g.alive(v)) path.push_back(v);
    if (path.size() < 2) {
      out.failure = {"contract", "wire " + name + " has fewer than two alive vertices"};
      return false;
    }
    const int a = path.front(), b = path.back();
    for (size_t k = 0; k + 1 < path.size(); ++k)
      if (!g.adjacent(path[k], path[k + 1])) {
        out.failure = {"contract", "wire " + name + " breaks between " +
                                       std::to_string(path[k]) + " and " +
                                       std::to_string(path[k + 1])};
        return false;
      }
    for (size_t k = 1; k + 1 < path.size(); ++k)
      if (g.degree(path[k]) != 2) {
        out.failure = {"contract", "wire " + name + " interior " + std::to_string(path[k]) +
                                       " has stray edges"};
        return false;
      }
    if (path.size() == 2) return true;  // already a grid edge
    if (g.adjacent(a, b)) {
      out.failure = {"contract", "wire " + name + " endpoints adjacent before contraction"};
      return false;
    }
    std::deque<int> interior(path.begin() + 1, path.end() - 1);
    while (interior.size() >= 2) {
      const int left = interior.front();
      interior.pop_front();
      const int mid = interior.front();
      interior.pop_front();
      g.measure_x_pair(left, mid);
    }
    if (!interior.empty()) g.measure_y(interior.front());  // toggles the hub-hub edge on
    if (!g.adjacent(a, b)) {
      out.failure = {"contract", "wire " + name + " failed to leave a grid edge"};
      return false;
    }
    return true;
  };

  for (int i = 0; i < lp; ++i)
    for (int j = 0; j < lp; ++j) {
      const int n = i * lp + j;
      const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (j + 1 < lp && !contract_wire(net.wire_right[n], at + "-right")) return out;
      if (i + 1 < lp && !contract_wire(net.wire_down[n], at + "-down")) return out;
    }

  if (g.alive_count() != lp * lp) {
    out.failure = {"contract", "leftover vertices after contraction: " +
                                   std::to_string(g.alive_count()) + " alive, expected " +
                                   std::to_string(lp * lp)};
    return out;
  }
  out.cert.lambda_prime = lp;
  out.cert.vertex_at = net.hub;
  out.ok = true;
  return out;
}

bool verify_grid_certificate(const RewriteGraph& g, const GridCertificate& cert) {
  const int lp = cert.lambda_prime;
  if (lp < 1 || static_cast<int>(cert.vertex_at.size()) != lp * lp) return false;
  std::vector<char> seen(g.size(), 0);
  for (int v : cert.vertex_at) {
    if (v < 0 || v >= g.size() || !g.alive(v) || seen[v]) return false;
    seen[v] = 1;
  }
  if (g.alive_count() != lp * lp) return false;
  // Fresh grid adjacency, compared pairwise.
  for (int a = 0; a < lp * lp; ++a)
    for (int b = a + 1; b < lp * lp; ++b) {
      const int dr = std::abs(a / lp - b / lp), dc = std::abs(a % lp - b % lp);
      const bool grid_edge = dr + dc == 1;
      if (g.adjacent(cert.vertex_at[a], cert.vertex_at[b]) != grid_edge) return false;
    }
  return true;
}

uint64_t domain_graph_hash(const DomainGraph& g) {
  uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(g.V));
  for (const auto& [a, b] : g.edges_post) {
    mix(static_cast<uint64_t>(a));
    mix(static_cast<uint64_t>(b));
  }
  return h;
}

namespace {

StageCounts stage_counts(const RewriteGraph& g) {
  return {g.alive_count(), static_cast<long long>(g.edges().size())};
}

// Every initial vertex must end up alive in the grid or be measured exactly
// once.
bool vertex_accounting_holds(const RewriteGraph& g) {
  std::vector<int> seen(g.size(), 0);
  for (const auto& e : g.log()) {
    ++seen[e.a];
    if (e.op == 'x') ++seen[e.b];
  }
  for (int v = 0; v < g.size(); ++v) seen[v] += g.alive(v) ? 1 : 0;
  for (int v = 0; v < g.size(); ++v)
    if (seen[v] != 1) return false;
  return true;
}

}  // namespace

ReductionOutcome reduce_to_grid(const Lattice& lat, const OutcomeConfig& cfg,
                                double l_constant) {
  ReductionOutcome out;
  ReductionReport& rep = out.report;
  rep.L = lat.L;
  rep.l = reduction_scale(lat.L, l_constant);

  const Decomposed dd = decompose(lat, cfg);
  rep.graph_hash = domain_graph_hash(dd.graph);

  RewriteGraph g(dd.graph.V, dd.graph.edges_post);
  rep.initial = stage_counts(g);

  CarveResult carve = carve_net(lat, dd.dec, dd.graph, rep.l);
  if (!carve.ok) {
    rep.failure = carve.failure;
    rep.log_length = static_cast<long long>(g.log().size());
    out.graph = std::move(g);
    return out;
  }
  rep.lambda_prime = carve.net.lambda_prime;

  apply_net_carve(g, carve.net);
  rep.net = stage_counts(g);

  ReductionFailure fail;
  if (!clean_wires_and_junctions(g, carve.net, &fail)) {
    rep.failure = fail;
    rep.log_length = static_cast<long long>(g.log().size());
    out.graph = std::move(g);
    return out;
  }
  rep.cleaned = stage_counts(g);

  ContractResult con = contract_to_grid(g, carve.net);
  if (!con.ok) {
    rep.failure = con.failure;
    rep.log_length = static_cast<long long>(g.log().size());
    out.graph = std::move(g);
    return out;
  }
  rep.grid = stage_counts(g);
  rep.log_length = static_cast<long long>(g.log().size());

  if (!verify_grid_certificate(g, con.cert)) {
    rep.failure = {"contract", "certificate failed the independent grid check"};
  } else if (!vertex_accounting_holds(g)) {
    rep.failure = {"contract", "vertex accounting mismatch between grid and log"};
  } else {
    rep.success = true;
    out.cert = con.cert;
  }
  out.graph = std::move(g);
  return out;
}

std::string reduction_report_jsonl(const ReductionReport& r) {
  const auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    return out;
  };
  char head[512];
  std::snprintf(head, sizeof head,
                "{\"graph_hash\":\"%016" PRIx64 "\",\"L\":%d,\"l\":%d,\"lambda_prime\":%d,"
                "\"initial_v\":%d,\"initial_e\":%lld,\"net_v\":%d,\"net_e\":%lld,"
                "\"cleaned_v\":%d,\"cleaned_e\":%lld,\"grid_v\":%d,\"grid_e\":%lld,"
                "\"log_length\":%lld,\"success\":%s",
                r.graph_hash, r.L, r.l, r.lambda_prime, r.initial.vertices, r.initial.edges,
                r.net.vertices, r.net.edges, r.cleaned.vertices, r.cleaned.edges,
                r.grid.vertices, r.grid.edges, r.log_length, r.success ? "true" : "false");
  std::string line(head);
  line += ",\"failure_stage\":\"" + escape(r.failure.stage) + "\"";
  line += ",\"failure_message\":\"" + escape(r.failure.message) + "\"}";
  return line;
}

}  // namespace aklt
