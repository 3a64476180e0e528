#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"

namespace aklt {

enum class SpanDirection { Horizontal, Vertical };

// Half-open site rectangle: rows [row0,row1) x cols [col0,col1). The chain
// and hand-built patches are treated as a single row with col = site index.
struct Region {
  int row0 = 0, row1 = 0, col0 = 0, col1 = 0;
};

// Per-configuration observables of the domain graph.
struct GraphStats {
  long long num_domains = 0;     // |V|
  long long edges_post = 0;      // |E| after even-multiplicity deletion
  long long edges_pre = 0;       // inter-domain lattice edges with multiplicity
  long long components = 0;      // components of the post graph
  long long betti = 0;           // edges_post - num_domains + components
  long long largest_domain = 0;  // most member sites in one domain
  double mean_degree = 0;        // 2 * edges_post / num_domains
  double mean_domain_size = 0;   // num_sites / num_domains
  double domain_size_width = 0;  // population std dev of domain sizes
  bool spans_x = false;          // left-right domain path, seam cut open
  bool spans_y = false;          // top-bottom; false when there is one row
};

GraphStats compute_graph_stats(const Lattice& lat, const OutcomeConfig& cfg);

// True when a chain of post-mod-2 adjacent domains, each with at least one
// member site inside the region, links the region's first and last column
// (Horizontal) or first and last row (Vertical). Domains are labeled with
// the lattice cut open along the tested direction, so wrap edges never
// provide the crossing. Defaults to the whole lattice when region is null.
// Throws std::invalid_argument when the region is degenerate (fewer than two
// columns resp. rows) or out of bounds.
bool spanning_exists(const Lattice& lat, const OutcomeConfig& cfg, SpanDirection dir,
                     const Region* region = nullptr);

// Mean with an autocorrelation-aware error bar: data are cut into blocks of
// at least ten integrated autocorrelation times, the error is the standard
// error of the block means, and a block bootstrap provides a cross-check.
struct MeanErr {
  double mean = 0;
  double err = 0;            // blocking estimate
  double err_bootstrap = 0;  // block-bootstrap cross-check
  double tau = 0.5;          // integrated autocorrelation time, in samples
  long long blocks = 0;
};

// Sokal-windowed estimate, >= 0.5 (0.5 means uncorrelated samples).
double integrated_autocorr_time(const std::vector<double>& xs);

// Throws std::invalid_argument on an empty series.
MeanErr blocked_mean(const std::vector<double>& xs,
                     uint64_t bootstrap_seed = 0x9e3779b97f4a7c15ull);

struct FieldSummary {
  std::string name;
  MeanErr est;
};

// Summary rows over a sample set: per-site densities of domains, edges and
// the Betti number, plus degree, domain-size and spanning averages. Throws
// std::invalid_argument with fewer than two samples.
std::vector<FieldSummary> aggregate_stats(const std::vector<GraphStats>& samples,
                                          const Lattice& lat);

// Least squares for y = a*x + b. With `err` empty the fit is unweighted and
// parameter errors are scaled by the residual variance; otherwise weights
// are 1/err^2. Throws std::invalid_argument on bad input sizes.
struct LinFit {
  double a = 0, b = 0;
  double a_err = 0, b_err = 0;
  double chi2 = 0;
  int dof = 0;
};
LinFit weighted_linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& err);

// Fit of mean largest-domain size against ln(num_sites). Requires at least
// three distinct system sizes, else throws std::invalid_argument.
LinFit fit_largest_domain(const std::vector<long long>& num_sites,
                          const std::vector<double>& mean_largest,
                          const std::vector<double>& errs);

// Upper tail P(X >= chi2) of the chi-squared distribution with `dof` degrees
// of freedom, via the regularized incomplete gamma function.
double chi2_survival(double chi2, long long dof);

}  // namespace aklt
