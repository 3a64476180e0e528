#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "aklt/loops.hpp"
#include "aklt/rng.hpp"

using namespace aklt;

namespace {

LoopGraph cycle(int n, int seam_edges = 0) {
  LoopGraph g;
  g.V = n;
  for (int i = 0; i < n; ++i)
    g.edges.push_back({i, (i + 1) % n, i < seam_edges, false});
  return g;
}

}  // namespace

TEST_CASE("trees have only the empty loop configuration") {
  LoopGraph path;
  path.V = 5;
  for (int i = 0; i + 1 < 5; ++i) path.edges.push_back({i, i + 1, false, false});
  REQUIRE(count_even_subgraphs_brute(path) == 1);
  REQUIRE(count_even_subgraphs_formula(path) == 1);
}

TEST_CASE("simple cycles") {
  for (int n : {3, 4, 6}) {
    REQUIRE(count_even_subgraphs_brute(cycle(n)) == 2);
    REQUIRE(count_even_subgraphs_formula(cycle(n)) == 2);
  }
}

TEST_CASE("theta multigraph") {
  LoopGraph g;
  g.V = 2;
  for (int i = 0; i < 3; ++i) g.edges.push_back({0, 1, false, false});
  REQUIRE(count_even_subgraphs_brute(g) == 4);  // empty + three 2-cycles
  REQUIRE(count_even_subgraphs_formula(g) == 4);
}

TEST_CASE("winding cycle is not contractible") {
  LoopGraph g = cycle(4, /*seam_edges=*/1);
  REQUIRE(count_even_subgraphs_brute(g) == 2);
  REQUIRE(count_even_zero_winding_brute(g) == 1);
  REQUIRE(count_even_zero_winding_formula(g) == 1);

  // Traversing the seam twice cancels the winding parity.
  LoopGraph g2 = cycle(4, 2);
  REQUIRE(count_even_zero_winding_brute(g2) == 2);
  REQUIRE(count_even_zero_winding_formula(g2) == 2);
}

TEST_CASE("independent windings in both directions") {
  LoopGraph g;
  g.V = 6;
  for (int i = 0; i < 3; ++i) g.edges.push_back({i, (i + 1) % 3, i == 0, false});
  for (int i = 0; i < 3; ++i) g.edges.push_back({3 + i, 3 + (i + 1) % 3, false, i == 0});
  REQUIRE(count_even_subgraphs_formula(g) == 4);
  REQUIRE(count_even_subgraphs_brute(g) == 4);
  REQUIRE(count_even_zero_winding_formula(g) == 1);
  REQUIRE(count_even_zero_winding_brute(g) == 1);
}

TEST_CASE("random multigraphs match the closed form") {
  Rng rng = make_rng(derive_stream(12345, 1));
  for (int trial = 0; trial < 60; ++trial) {
    LoopGraph g;
    g.V = 2 + static_cast<int>(uniform_below(rng, 5));
    const int E = 1 + static_cast<int>(uniform_below(rng, 12));
    for (int i = 0; i < E; ++i) {
      int u = static_cast<int>(uniform_below(rng, g.V));
      int v = static_cast<int>(uniform_below(rng, g.V));
      if (u == v) v = (v + 1) % g.V;
      g.edges.push_back({u, v, uniform_below(rng, 4) == 0, uniform_below(rng, 4) == 0});
    }
    REQUIRE(count_even_subgraphs_brute(g) == count_even_subgraphs_formula(g));
    REQUIRE(count_even_zero_winding_brute(g) == count_even_zero_winding_formula(g));
  }
}

TEST_CASE("loop-set counts on connected domains") {
  LoopGraph hexface;
  hexface.V = 6;
  for (int i = 0; i < 6; ++i) hexface.edges.push_back({i, (i + 1) % 6, false, false});
  REQUIRE(count_loop_sets(hexface) == 2);  // empty set and the face itself

  LoopGraph tree;
  tree.V = 5;
  for (int i = 1; i < 5; ++i) tree.edges.push_back({0, i, false, false});
  REQUIRE(count_loop_sets(tree) == 1);

  // Connected domain with V=16, E=18: three independent cycles.
  LoopGraph g;
  g.V = 16;
  for (int i = 0; i + 1 < 16; ++i) g.edges.push_back({i, i + 1, false, false});
  g.edges.push_back({0, 5, false, false});
  g.edges.push_back({4, 9, false, false});
  g.edges.push_back({8, 15, false, false});
  REQUIRE(count_loop_sets(g) == 8);
  REQUIRE(count_even_subgraphs_brute(g) == 8);

  LoopGraph split;
  split.V = 4;
  split.edges.push_back({0, 1, false, false});
  split.edges.push_back({2, 3, false, false});
  REQUIRE_THROWS_AS(count_loop_sets(split), std::invalid_argument);
}
