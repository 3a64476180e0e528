#include "aklt/stats.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"
#include "aklt/rng.hpp"

using namespace aklt;

namespace {

OutcomeConfig random_config(const Lattice& lat, Rng& rng) {
  OutcomeConfig cfg(lat.num_sites);
  for (auto& a : cfg) a = static_cast<Axis>(uniform_below(rng, 3));
  return cfg;
}

// Independent Betti check: size of a spanning forest of the post graph.
long long spanning_forest_edges(const DomainGraph& g) {
  std::vector<char> seen(g.V, 0);
  std::vector<int> queue;
  long long tree_edges = 0;
  for (int s = 0; s < g.V; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      for (int w : g.adj_post[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        ++tree_edges;
        queue.push_back(w);
      }
    }
  }
  return tree_edges;
}

}  // namespace

TEST_CASE("betti number equals excess edges over a spanning forest") {
  Rng rng = make_rng(derive_stream(505, 1));
  for (const auto& lat : {make_lattice(LatticeKind::Honeycomb, 4, Boundary::Periodic),
                          make_lattice(LatticeKind::Honeycomb, 5, Boundary::Open),
                          make_lattice(LatticeKind::Chain1D, 8, Boundary::Periodic)}) {
    for (int it = 0; it < 50; ++it) {
      const OutcomeConfig cfg = random_config(lat, rng);
      const GraphStats st = compute_graph_stats(lat, cfg);
      const Decomposed d = decompose(lat, cfg);
      REQUIRE(st.betti >= 0);
      REQUIRE(st.betti == st.edges_post - spanning_forest_edges(d.graph));
      REQUIRE(st.num_domains == d.graph.V);
      REQUIRE(st.edges_pre == d.graph.e_pre_total);
      REQUIRE(st.mean_degree ==
              Catch::Approx(2.0 * double(st.edges_post) / double(st.num_domains)));
      REQUIRE(st.mean_domain_size ==
              Catch::Approx(double(lat.num_sites) / double(st.num_domains)));
    }
  }
}

TEST_CASE("betti numbers of hand-built configurations") {
  // Open chain with alternating outcomes: a path of singleton domains, B = 0.
  const Lattice chain = make_lattice(LatticeKind::Chain1D, 6, Boundary::Open);
  GraphStats st = compute_graph_stats(chain, config_from_string("010101"));
  REQUIRE(st.num_domains == 6);
  REQUIRE(st.edges_post == 5);
  REQUIRE(st.betti == 0);
  REQUIRE(st.largest_domain == 1);

  // Periodic alternating ring: a 6-cycle of domains, B = 1.
  const Lattice ring = make_lattice(LatticeKind::Chain1D, 6, Boundary::Periodic);
  st = compute_graph_stats(ring, config_from_string("010101"));
  REQUIRE(st.num_domains == 6);
  REQUIRE(st.edges_post == 6);
  REQUIRE(st.components == 1);
  REQUIRE(st.betti == 1);

  // Periodic honeycomb, all sites in singleton domains: B = E - V + 1.
  const Lattice hc = make_lattice(LatticeKind::Honeycomb, 4, Boundary::Periodic);
  OutcomeConfig checker(hc.num_sites);
  for (int s = 0; s < hc.num_sites; ++s)
    checker[s] = hc.sublattice(s) == 0 ? Axis::X : Axis::Y;
  st = compute_graph_stats(hc, checker);
  REQUIRE(st.num_domains == 16);
  REQUIRE(st.edges_post == 24);
  REQUIRE(st.components == 1);
  REQUIRE(st.betti == 9);
  REQUIRE(st.mean_domain_size == Catch::Approx(1.0));
}

TEST_CASE("even edge multiplicities block spanning through a wall") {
  // Open 4x4 honeycomb, all x except a z wall in row 2. Rows are fully
  // connected by east-west bonds, and the wall meets the x block above and
  // the x row below through exactly two vertical bonds each (the brick wall
  // has alternating vertical bonds), so both post-mod-2 edges vanish: no
  // vertical spanning, while every horizontal stripe spans on its own.
  const Lattice lat = make_lattice(LatticeKind::Honeycomb, 4, Boundary::Open);
  OutcomeConfig cfg(lat.num_sites, Axis::X);
  for (int c = 0; c < 4; ++c) cfg[2 * 4 + c] = Axis::Z;

  const GraphStats st = compute_graph_stats(lat, cfg);
  REQUIRE(st.num_domains == 3);
  REQUIRE(st.spans_x);
  REQUIRE_FALSE(st.spans_y);

  // Inside the left block the x domain spans on its own.
  const Region left{0, 4, 0, 2};
  REQUIRE(spanning_exists(lat, cfg, SpanDirection::Horizontal, &left));

  // Degenerate regions are rejected.
  const Region thin{0, 4, 1, 2};
  REQUIRE_THROWS_AS(spanning_exists(lat, cfg, SpanDirection::Horizontal, &thin),
                    std::invalid_argument);
  const Region outside{0, 5, 0, 4};
  REQUIRE_THROWS_AS(spanning_exists(lat, cfg, SpanDirection::Horizontal, &outside),
                    std::invalid_argument);
}

TEST_CASE("spanning ignores wrap edges along the tested direction") {
  // Periodic ring whose end sites agree: without the cut they would form one
  // wrapping domain with an even double edge to the middle, with the cut the
  // three pieces chain up left to right.
  const Lattice ring = make_lattice(LatticeKind::Chain1D, 6, Boundary::Periodic);
  REQUIRE(spanning_exists(ring, config_from_string("011110"), SpanDirection::Horizontal));

  // A single wrapping domain still spans once cut open: all-equal ring.
  REQUIRE(spanning_exists(ring, config_from_string("000000"), SpanDirection::Horizontal));

  // Vertical spanning is degenerate on a single-row lattice.
  REQUIRE_THROWS_AS(spanning_exists(ring, config_from_string("012012"), SpanDirection::Vertical),
                    std::invalid_argument);
}

TEST_CASE("autocorrelation time and blocked errors on synthetic series") {
  // AR(1) with phi = 0.6: tau = (1+phi)/(2(1-phi)) = 2, known mean error.
  std::mt19937_64 gen(12345);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double phi = 0.6;
  const long long n = 20000;
  std::vector<double> xs(n);
  double x = 0;
  for (long long i = 0; i < n; ++i) {
    x = phi * x + normal(gen);
    xs[i] = x;
  }
  const double tau = integrated_autocorr_time(xs);
  REQUIRE(tau > 1.4);
  REQUIRE(tau < 2.6);

  const MeanErr me = blocked_mean(xs);
  const double c0 = 1.0 / (1.0 - phi * phi);
  const double expected_err = std::sqrt(c0 * 2.0 * 2.0 / double(n));
  REQUIRE(me.err > 0.6 * expected_err);
  REQUIRE(me.err < 1.6 * expected_err);
  REQUIRE(me.err_bootstrap > 0.5 * me.err);
  REQUIRE(me.err_bootstrap < 2.0 * me.err);
  REQUIRE(me.blocks >= 10);
}

TEST_CASE("blocked error of an uncorrelated series matches the naive formula") {
  std::mt19937_64 gen(999);
  std::normal_distribution<double> normal(5.0, 2.0);
  const long long n = 10000;
  std::vector<double> xs(n);
  double mean = 0, var = 0;
  for (auto& v : xs) v = normal(gen);
  for (double v : xs) mean += v;
  mean /= double(n);
  for (double v : xs) var += (v - mean) * (v - mean);
  var /= double(n - 1);
  const double naive = std::sqrt(var / double(n));

  const MeanErr me = blocked_mean(xs);
  REQUIRE(me.mean == Catch::Approx(mean));
  REQUIRE(me.tau < 0.7);
  REQUIRE(me.err == Catch::Approx(naive).margin(0.35 * naive));

  REQUIRE_THROWS_AS(blocked_mean({}), std::invalid_argument);
}

TEST_CASE("chi squared survival function matches reference values") {
  REQUIRE(chi2_survival(2.0, 2) == Catch::Approx(std::exp(-1.0)).epsilon(1e-10));
  REQUIRE(chi2_survival(1.0, 1) == Catch::Approx(0.3173105078629141).epsilon(1e-10));
  // Erlang tail: dof 4 at x = 4 gives 3 e^{-2}.
  REQUIRE(chi2_survival(4.0, 4) == Catch::Approx(3.0 * std::exp(-2.0)).epsilon(1e-10));
  // Classic table value: dof 10, x = 3.940 -> 0.95.
  REQUIRE(chi2_survival(3.940, 10) == Catch::Approx(0.95).margin(2e-3));
  REQUIRE(chi2_survival(0.0, 5) == 1.0);
  REQUIRE(chi2_survival(80.0, 80) > chi2_survival(120.0, 80));
}

TEST_CASE("weighted linear fits recover exact lines and propagate errors") {
  // Exact line through three points.
  LinFit fit = weighted_linear_fit({0, 1, 2}, {-2, 1, 4}, {1, 1, 1});
  REQUIRE(fit.a == Catch::Approx(3.0).epsilon(1e-12));
  REQUIRE(fit.b == Catch::Approx(-2.0).epsilon(1e-12));
  REQUIRE(fit.chi2 == Catch::Approx(0.0).margin(1e-20));
  // Hand-computed covariance for unit weights: a_err = sqrt(S/det) = sqrt(1/2).
  REQUIRE(fit.a_err == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));

  // Unweighted path scales by residual variance; an exact line has zero error.
  fit = weighted_linear_fit({0, 1, 2, 3}, {1, 3, 5, 7}, {});
  REQUIRE(fit.a == Catch::Approx(2.0).epsilon(1e-12));
  REQUIRE(fit.a_err == Catch::Approx(0.0).margin(1e-10));

  REQUIRE_THROWS_AS(weighted_linear_fit({1, 1}, {0, 1}, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(weighted_linear_fit({1}, {0}, {}), std::invalid_argument);
}

TEST_CASE("largest-domain fit recovers synthetic logarithmic growth") {
  const std::vector<long long> sizes = {400, 1600, 3600, 10000};
  std::vector<double> means(sizes.size());
  for (size_t i = 0; i < sizes.size(); ++i)
    means[i] = 3.3 * std::log(double(sizes[i])) - 5.5;
  const LinFit fit = fit_largest_domain(sizes, means, {0.01, 0.01, 0.01, 0.01});
  REQUIRE(fit.a == Catch::Approx(3.3).epsilon(1e-9));
  REQUIRE(fit.b == Catch::Approx(-5.5).epsilon(1e-9));

  REQUIRE_THROWS_AS(fit_largest_domain({100, 100, 100}, {1, 1, 1}, {}),
                    std::invalid_argument);
}

TEST_CASE("aggregation needs two samples and averages densities") {
  const Lattice lat = make_lattice(LatticeKind::Honeycomb, 4, Boundary::Periodic);
  Rng rng = make_rng(derive_stream(0, 7));
  std::vector<GraphStats> samples;
  REQUIRE_THROWS_AS(aggregate_stats(samples, lat), std::invalid_argument);
  samples.push_back(compute_graph_stats(lat, random_config(lat, rng)));
  REQUIRE_THROWS_AS(aggregate_stats(samples, lat), std::invalid_argument);
  samples.push_back(compute_graph_stats(lat, random_config(lat, rng)));

  const auto rows = aggregate_stats(samples, lat);
  double v_density = -1;
  for (const auto& row : rows)
    if (row.name == "domains_per_site") v_density = row.est.mean;
  const double expect =
      0.5 * (samples[0].num_domains + samples[1].num_domains) / double(lat.num_sites);
  REQUIRE(v_density == Catch::Approx(expect).epsilon(1e-12));
}
