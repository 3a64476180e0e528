#include "aklt/percolation.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "aklt/sampler.hpp"
#include "aklt/stats.hpp"

using namespace aklt;

namespace {

OutcomeConfig random_config(const Lattice& lat, Rng& rng) {
  OutcomeConfig cfg(lat.num_sites);
  for (auto& a : cfg) a = static_cast<Axis>(uniform_below(rng, 3));
  return cfg;
}

}  // namespace

TEST_CASE("undiluted spanning agrees with the direct spanning test") {
  // Open boundary, so the seam cuts in the embedding are no-ops and the
  // direction-resolved indicators must match spanning_exists exactly.
  const Lattice lat = make_lattice(LatticeKind::Honeycomb, 6, Boundary::Open);
  Rng rng = make_rng(derive_stream(600, 1));
  const std::vector<double> p0 = {0.0};
  for (int it = 0; it < 30; ++it) {
    const OutcomeConfig cfg = random_config(lat, rng);
    const EmbeddedGraph g = embed_for_percolation(lat, cfg);
    Rng draw = make_rng(derive_stream(600, 2, it));
    const char h = spanning_exists(lat, cfg, SpanDirection::Horizontal) ? 1 : 0;
    const char v = spanning_exists(lat, cfg, SpanDirection::Vertical) ? 1 : 0;
    for (DilutionMode mode : {DilutionMode::Site, DilutionMode::Bond}) {
      REQUIRE(spanning_under_dilution(g, mode, SpanRequirement::Horizontal, p0, draw)[0] == h);
      REQUIRE(spanning_under_dilution(g, mode, SpanRequirement::Vertical, p0, draw)[0] == v);
      REQUIRE(spanning_under_dilution(g, mode, SpanRequirement::Both, p0, draw)[0] ==
              ((h && v) ? 1 : 0));
    }
  }
}

TEST_CASE("full dilution kills site spanning but a single domain survives bond dilution") {
  const Lattice lat = make_lattice(LatticeKind::Honeycomb, 4, Boundary::Open);
  const std::vector<double> p1 = {1.0};

  // All-equal configuration: one domain touches both boundary columns, so it
  // spans with every edge deleted, while deleting all vertices cannot span.
  const OutcomeConfig all_x(lat.num_sites, Axis::X);
  const EmbeddedGraph g1 = embed_for_percolation(lat, all_x);
  Rng rng = make_rng(derive_stream(601, 1));
  REQUIRE(spanning_under_dilution(g1, DilutionMode::Bond, SpanRequirement::Both, p1, rng)[0] == 1);
  REQUIRE(spanning_under_dilution(g1, DilutionMode::Site, SpanRequirement::Both, p1, rng)[0] == 0);

  // Singleton domains: bond dilution at p = 1 disconnects the columns.
  OutcomeConfig checker(lat.num_sites);
  for (int s = 0; s < lat.num_sites; ++s)
    checker[s] = lat.sublattice(s) == 0 ? Axis::Y : Axis::Z;
  const EmbeddedGraph g2 = embed_for_percolation(lat, checker);
  REQUIRE(spanning_under_dilution(g2, DilutionMode::Bond, SpanRequirement::Both, p1, rng)[0] == 0);
}

TEST_CASE("coupled replicates are monotone along the dilution grid") {
  const Lattice lat = make_lattice(LatticeKind::Honeycomb, 8, Boundary::Periodic);
  Rng cfg_rng = make_rng(derive_stream(602, 1));
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);

  for (int it = 0; it < 10; ++it) {
    const OutcomeConfig cfg = random_config(lat, cfg_rng);
    const EmbeddedGraph g = embed_for_percolation(lat, cfg);
    for (DilutionMode mode : {DilutionMode::Site, DilutionMode::Bond}) {
      Rng rng = make_rng(derive_stream(602, 2, it * 2 + (mode == DilutionMode::Bond)));
      for (int rep = 0; rep < 8; ++rep) {
        const auto spans = spanning_under_dilution(g, mode, SpanRequirement::Both, grid, rng);
        for (size_t i = 0; i + 1 < spans.size(); ++i)
          REQUIRE(spans[i] >= spans[i + 1]);
      }
    }
  }
}

TEST_CASE("accumulated curves are deterministic and monotone in the mean") {
  const Lattice lat = make_lattice(LatticeKind::Honeycomb, 8, Boundary::Periodic);
  DilutionSpec spec;
  spec.mode = DilutionMode::Site;
  spec.seed = 603;
  spec.replicates = 8;
  for (int i = 0; i <= 10; ++i) spec.p_grid.push_back(i / 10.0);

  ChainParams params;
  params.seed = 604;
  params.warmup_sweeps = 50;
  params.sweeps = 100;
  params.interval = 5;
  const SampleStream stream = collect_samples(lat, params);

  PercolationAccumulator acc(spec), acc2(spec);
  REQUIRE_THROWS_AS(acc.curve(), std::runtime_error);
  for (const auto& s : stream.samples) {
    acc.add_config(lat, s.config);
    acc2.add_config(lat, s.config);
  }
  const PercolationCurve curve = acc.curve();
  const PercolationCurve curve2 = acc2.curve();
  REQUIRE(curve.points.size() == spec.p_grid.size());
  for (size_t i = 0; i < curve.points.size(); ++i) {
    REQUIRE(curve.points[i].p_cluster == curve2.points[i].p_cluster);
    REQUIRE(curve.points[i].trials == 20 * 8);
    if (i + 1 < curve.points.size())
      REQUIRE(curve.points[i].p_cluster >= curve.points[i + 1].p_cluster);
  }
  // The p = 0 point carries no randomness: it must equal the fraction of
  // configurations whose embedded graph spans both directions outright.
  int both = 0;
  for (const auto& s : stream.samples) {
    const EmbeddedGraph g = embed_for_percolation(lat, s.config);
    Rng probe = make_rng(derive_stream(605, 1));
    both += spanning_under_dilution(g, DilutionMode::Site, SpanRequirement::Both,
                                    {0.0}, probe)[0];
  }
  REQUIRE(curve.points.front().p_cluster ==
          static_cast<double>(both) / static_cast<double>(stream.samples.size()));
  REQUIRE(curve.points.back().p_cluster == 0.0);
}

TEST_CASE("threshold interpolation and error propagation are exact on synthetic data") {
  PercolationCurve curve;
  curve.points = {{0.2, 1.0, 0.0, 100, 100},
                  {0.4, 0.8, 0.04, 80, 100},
                  {0.6, 0.2, 0.04, 20, 100},
                  {0.8, 0.0, 0.0, 0, 100}};
  const ThresholdEstimate est = estimate_threshold(curve);
  REQUIRE(est.p_delete_cross == Catch::Approx(0.5).epsilon(1e-12));
  // Hand-propagated: dx/dy0 = 0.2*(0.5-0.2)/0.36, dx/dy1 = -0.2*(0.5-0.8)/0.36.
  const double d0 = 0.2 * 0.3 / 0.36, d1 = 0.2 * 0.3 / 0.36;
  const double expected = std::sqrt(d0 * d0 * 0.04 * 0.04 + d1 * d1 * 0.04 * 0.04);
  REQUIRE(est.err == Catch::Approx(expected).epsilon(1e-12));

  PercolationCurve flat;
  flat.points = {{0.1, 0.9, 0.01, 90, 100}, {0.2, 0.8, 0.01, 80, 100}};
  REQUIRE_THROWS_AS(estimate_threshold(flat), std::runtime_error);
}

TEST_CASE("dilution spec validation rejects bad grids") {
  DilutionSpec spec;
  spec.p_grid = {};
  REQUIRE_THROWS_AS(PercolationAccumulator(spec), std::invalid_argument);
  spec.p_grid = {0.4, 0.2};
  REQUIRE_THROWS_AS(PercolationAccumulator(spec), std::invalid_argument);
  spec.p_grid = {0.2, 1.4};
  REQUIRE_THROWS_AS(PercolationAccumulator(spec), std::invalid_argument);
  spec.p_grid = {0.2, 0.4};
  spec.replicates = 0;
  REQUIRE_THROWS_AS(PercolationAccumulator(spec), std::invalid_argument);
}
