#include <catch2/catch_amalgamated.hpp>

#include "aklt/graph_utils.hpp"
#include "aklt/lc_equiv.hpp"
#include "aklt/rng.hpp"

using namespace aklt;

namespace {

std::vector<uint64_t> star(int n) {
  std::vector<uint64_t> adj(n, 0);
  for (int v = 1; v < n; ++v) {
    adj[0] |= 1ull << v;
    adj[v] |= 1ull;
  }
  return adj;
}

std::vector<uint64_t> complete(int n) {
  std::vector<uint64_t> adj(n, 0);
  for (int v = 0; v < n; ++v) adj[v] = ((n == 64 ? ~0ull : (1ull << n) - 1)) ^ (1ull << v);
  return adj;
}

std::vector<uint64_t> path(int n) {
  std::vector<uint64_t> adj(n, 0);
  for (int v = 0; v + 1 < n; ++v) {
    adj[v] |= 1ull << (v + 1);
    adj[v + 1] |= 1ull << v;
  }
  return adj;
}

}  // namespace

TEST_CASE("local complement of a star is a complete graph") {
  REQUIRE(local_complement(star(5), 0) == complete(5));
}

TEST_CASE("star and complete graphs are equivalent") {
  for (int n : {2, 3, 4, 5, 6}) {
    REQUIRE(graphs_lc_equivalent(star(n), complete(n)));
    REQUIRE(graphs_lc_equivalent_orbit(star(n), complete(n)));
  }
}

TEST_CASE("path and star are inequivalent at n=4") {
  REQUIRE(!graphs_lc_equivalent(path(4), star(4)));
  REQUIRE(!graphs_lc_equivalent_orbit(path(4), star(4)));
}

TEST_CASE("component structure must match") {
  // Edge 0-1 plus isolated 2, versus edge 1-2 plus isolated 0.
  std::vector<uint64_t> a = {0b010, 0b001, 0};
  std::vector<uint64_t> b = {0, 0b100, 0b010};
  REQUIRE(!graphs_lc_equivalent(a, b));
  REQUIRE(graphs_lc_equivalent(a, a));
}

TEST_CASE("LC sequences stay in the orbit") {
  Rng rng = make_rng(derive_stream(777, 2));
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(uniform_below(rng, 4));  // 4..7
    auto g = random_connected_graph(n, static_cast<int>(uniform_below(rng, 6)), rng);
    auto h = g;
    for (int step = 0; step < 6; ++step) {
      int v = static_cast<int>(uniform_below(rng, n));
      if (h[v]) h = local_complement(h, v);
    }
    REQUIRE(graphs_lc_equivalent(g, h));
  }
}

TEST_CASE("solver agrees with orbit search on random pairs") {
  Rng rng = make_rng(derive_stream(777, 3));
  int equivalent_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(uniform_below(rng, 2));  // 4..5
    auto g = random_connected_graph(n, static_cast<int>(uniform_below(rng, 4)), rng);
    auto h = random_connected_graph(n, static_cast<int>(uniform_below(rng, 4)), rng);
    const bool fast = graphs_lc_equivalent(g, h);
    const bool slow = graphs_lc_equivalent_orbit(g, h);
    REQUIRE(fast == slow);
    equivalent_seen += fast;
  }
  REQUIRE(equivalent_seen > 0);  // the comparison exercises both verdicts
}
