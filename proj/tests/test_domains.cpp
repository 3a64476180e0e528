#include <catch2/catch_amalgamated.hpp>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"

using namespace aklt;

TEST_CASE("chain domain labeling") {
  Lattice lat = make_lattice(LatticeKind::Chain1D, 6, Boundary::Periodic);
  OutcomeConfig cfg = config_from_string("001122");  // x x y y z z
  auto [dec, g, w] = decompose(lat, cfg);
  REQUIRE(dec.num_domains == 3);
  REQUIRE(dec.members[0] == std::vector<int>{0, 1});
  REQUIRE(dec.members[1] == std::vector<int>{2, 3});
  REQUIRE(dec.members[2] == std::vector<int>{4, 5});
  REQUIRE(dec.axis[0] == Axis::X);
  REQUIRE(dec.axis[2] == Axis::Z);
  REQUIRE(g.e_pre_total == 3);
  REQUIRE(g.edges_post.size() == 3);
  REQUIRE(w.has_value());
  REQUIRE(*w == 0);
}

TEST_CASE("wrap-around domain") {
  Lattice lat = make_lattice(LatticeKind::Chain1D, 6, Boundary::Periodic);
  OutcomeConfig cfg = config_from_string("001120");  // sites 5,0,1 share x
  auto dec = label_domains(lat, cfg);
  REQUIRE(dec.num_domains == 3);
  REQUIRE(dec.domain_of[5] == dec.domain_of[0]);
  REQUIRE(dec.members[0] == std::vector<int>{0, 1, 5});
}

TEST_CASE("odd all-equal ring has zero weight") {
  Lattice lat = make_lattice(LatticeKind::Chain1D, 5, Boundary::Periodic);
  auto d = decompose(lat, config_from_string("00000"));
  REQUIRE(d.dec.num_domains == 1);
  REQUIRE(!d.log2w.has_value());

  Lattice lat4 = make_lattice(LatticeKind::Chain1D, 4, Boundary::Periodic);
  auto d4 = decompose(lat4, config_from_string("0000"));
  REQUIRE(d4.log2w.has_value());
  REQUIRE(*d4.log2w == 1);  // one domain, no inter-domain edges
}

TEST_CASE("parallel edges cancel mod 2") {
  Lattice lat = make_lattice(LatticeKind::Chain1D, 2, Boundary::Periodic);
  auto d = decompose(lat, config_from_string("01"));
  REQUIRE(d.dec.num_domains == 2);
  REQUIRE(d.graph.e_pre_total == 2);
  REQUIRE(d.graph.edges_pre.size() == 1);
  REQUIRE(d.graph.edges_pre[0].second == 2);
  REQUIRE(d.graph.edges_post.empty());
  REQUIRE(*d.log2w == 0);
  REQUIRE(components_post(d.graph) == 2);
  REQUIRE(components_pre(d.graph) == 1);
}

TEST_CASE("seam cutting") {
  Lattice lat = make_lattice(LatticeKind::Chain1D, 4, Boundary::Periodic);
  OutcomeConfig cfg = config_from_string("0001");
  auto full = decompose(lat, cfg);
  REQUIRE(full.graph.e_pre_total == 2);
  auto cut = decompose(lat, cfg, /*cut_x=*/true);
  REQUIRE(cut.dec.num_domains == 2);
  REQUIRE(cut.graph.e_pre_total == 1);

  // Cutting can split a domain that only connects across the seam.
  OutcomeConfig cfg2 = config_from_string("0110");
  REQUIRE(label_domains(lat, cfg2).num_domains == 2);
  REQUIRE(label_domains(lat, cfg2, true).num_domains == 3);
}

TEST_CASE("honeycomb all-equal configuration") {
  Lattice lat = make_lattice(LatticeKind::Honeycomb, 4, Boundary::Periodic);
  OutcomeConfig cfg(lat.num_sites, Axis::Z);
  auto d = decompose(lat, cfg);
  REQUIRE(d.dec.num_domains == 1);
  REQUIRE(d.graph.e_pre_total == 0);
  REQUIRE(d.log2w.has_value());  // bipartite: no odd internal cycle
  REQUIRE(*d.log2w == 1);
}

TEST_CASE("domain representatives") {
  Lattice lat = make_lattice(LatticeKind::Chain1D, 7, Boundary::Open);
  OutcomeConfig cfg = config_from_string("0002211");
  auto dec = label_domains(lat, cfg);
  auto rep = domain_representatives(lat, dec);
  REQUIRE(rep[dec.domain_of[0]] == 1);  // center of {0,1,2}
  REQUIRE(rep[dec.domain_of[3]] == 3);  // smaller index wins the {3,4} tie
  REQUIRE(rep[dec.domain_of[5]] == 5);
}

TEST_CASE("configuration string round trip") {
  OutcomeConfig cfg = {Axis::X, Axis::Z, Axis::Y};
  REQUIRE(config_to_string(cfg) == "021");
  REQUIRE(config_from_string("021") == cfg);
  REQUIRE_THROWS_AS(config_from_string("03"), std::invalid_argument);
}
