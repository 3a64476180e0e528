#include <catch2/catch_amalgamated.hpp>

#include "aklt/tableau.hpp"

using namespace aklt;

namespace {

const std::vector<std::pair<int, int>> kPath4 = {{0, 1}, {1, 2}, {2, 3}};

}  // namespace

TEST_CASE("fresh tableau is valid") {
  Tableau t(3);
  REQUIRE(t.check_valid());
  REQUIRE(t.group_contains(0, 1ull << 0, 0));  // +Z0
  REQUIRE(!t.group_contains(0, 1ull << 0, 2));  // -Z0 absent
  REQUIRE(!t.group_contains(1ull << 0, 0, 0));  // X0 absent
  t.h(0);
  t.s(1);
  t.cnot(0, 2);
  t.cz(1, 2);
  REQUIRE(t.check_valid());
}

TEST_CASE("graph state stabilizers") {
  Tableau t = Tableau::graph_state(3, {{0, 1}, {1, 2}});
  REQUIRE(t.check_valid());
  // X_v times Z on the neighborhood, all +1.
  REQUIRE(t.group_contains(1ull << 0, 1ull << 1, 0));
  REQUIRE(t.group_contains(1ull << 1, (1ull << 0) | (1ull << 2), 0));
  REQUIRE(t.group_contains(1ull << 2, 1ull << 1, 0));
  REQUIRE(!t.group_contains(1ull << 0, 1ull << 2, 0));
  // Product of edge stabilizers: Y0 Y1 on a single edge graph.
  Tableau e = Tableau::graph_state(2, {{0, 1}});
  REQUIRE(e.group_contains(0b11, 0b11, 0));
}

TEST_CASE("measurement statuses on product states") {
  Tableau t(1);
  REQUIRE(t.measure_postselect(0, Pauli::Z, +1) == MeasureStatus::Deterministic);
  REQUIRE(t.measure_postselect(0, Pauli::Z, -1) == MeasureStatus::Impossible);
  REQUIRE(t.measure_postselect(0, Pauli::X, +1) == MeasureStatus::RandomProjected);
  REQUIRE(t.group_contains(1, 0, 0));  // now +X0
  REQUIRE(t.measure_postselect(0, Pauli::X, +1) == MeasureStatus::Deterministic);
}

TEST_CASE("postselected branches of an edge graph state") {
  // CZ|++> with Z0 -> +1 leaves qubit 1 in |+>.
  Tableau t = Tableau::graph_state(2, {{0, 1}});
  REQUIRE(t.measure_postselect(0, Pauli::Z, +1) == MeasureStatus::RandomProjected);
  REQUIRE(t.measure_postselect(1, Pauli::X, +1) == MeasureStatus::Deterministic);
  REQUIRE(t.measure_postselect(1, Pauli::X, -1) == MeasureStatus::Impossible);

  // The -1 branch leaves qubit 1 in |->, where X = -1 is certain.
  Tableau u = Tableau::graph_state(2, {{0, 1}});
  REQUIRE(u.measure_postselect(0, Pauli::Z, -1) == MeasureStatus::RandomProjected);
  REQUIRE(u.measure_postselect(1, Pauli::X, -1) == MeasureStatus::Deterministic);
  REQUIRE(u.measure_postselect(1, Pauli::X, +1) == MeasureStatus::Impossible);
}

TEST_CASE("y measurement projects onto +Y") {
  Tableau t(1);
  REQUIRE(t.measure_postselect(0, Pauli::Y, +1) == MeasureStatus::RandomProjected);
  REQUIRE(t.group_contains(1, 1, 0));  // +Y0
  REQUIRE(t.check_valid());
}

TEST_CASE("graph extraction returns the graph of a graph state") {
  Tableau t = Tableau::graph_state(4, kPath4);
  auto adj = t.to_graph_adjacency();
  REQUIRE(adj == std::vector<uint64_t>{0b0010, 0b0101, 0b1010, 0b0100});
}

TEST_CASE("graph extraction survives local gates") {
  Tableau t = Tableau::graph_state(4, kPath4);
  t.h(0);
  t.s(2);
  t.sdg(3);
  t.z(1);
  auto adj = t.to_graph_adjacency();
  // Still a 4-qubit pure stabilizer state with some graph; rebuild and
  // compare groups via a round trip through restriction (identity here).
  Tableau back = t.restrict_to({0, 1, 2, 3});
  REQUIRE(back.check_valid());
  REQUIRE(back.to_graph_adjacency() == adj);
}

TEST_CASE("restriction drops measured qubits") {
  Tableau t = Tableau::graph_state(4, kPath4);
  REQUIRE(t.measure_postselect(3, Pauli::Z, +1) == MeasureStatus::RandomProjected);
  Tableau r = t.restrict_to({0, 1, 2});
  REQUIRE(r.n() == 3);
  REQUIRE(r.check_valid());
  REQUIRE(r.to_graph_adjacency() == std::vector<uint64_t>{0b010, 0b101, 0b010});
}

TEST_CASE("restriction refuses entangled qubits") {
  Tableau t = Tableau::graph_state(2, {{0, 1}});
  REQUIRE_THROWS_AS(t.restrict_to({0}), std::logic_error);
}
