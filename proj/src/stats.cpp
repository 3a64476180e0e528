#include "aklt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aklt/rng.hpp"

namespace aklt {

namespace {

int lattice_rows(const Lattice& lat) {
  return lat.kind == LatticeKind::Honeycomb ? lat.L : 1;
}

int lattice_cols(const Lattice& lat) {
  return lat.kind == LatticeKind::Honeycomb ? lat.L : lat.num_sites;
}

int site_at(const Lattice& lat, int r, int c) {
  return lat.kind == LatticeKind::Honeycomb ? r * lat.L + c : c;
}

// Regularized incomplete gamma helpers (series and continued fraction).
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

GraphStats compute_graph_stats(const Lattice& lat, const OutcomeConfig& cfg) {
  const Decomposed d = decompose(lat, cfg);
  GraphStats st;
  st.num_domains = d.graph.V;
  st.edges_post = static_cast<long long>(d.graph.edges_post.size());
  st.edges_pre = d.graph.e_pre_total;
  st.components = components_post(d.graph);
  st.betti = st.edges_post - st.num_domains + st.components;

  double sum = 0, sum2 = 0;
  for (const auto& m : d.dec.members) {
    const double sz = static_cast<double>(m.size());
    st.largest_domain = std::max(st.largest_domain, static_cast<long long>(m.size()));
    sum += sz;
    sum2 += sz * sz;
  }
  const double V = static_cast<double>(st.num_domains);
  st.mean_degree = 2.0 * static_cast<double>(st.edges_post) / V;
  st.mean_domain_size = static_cast<double>(lat.num_sites) / V;
  st.domain_size_width = std::sqrt(std::max(0.0, sum2 / V - (sum / V) * (sum / V)));

  st.spans_x = spanning_exists(lat, cfg, SpanDirection::Horizontal);
  st.spans_y = lattice_rows(lat) >= 2 && spanning_exists(lat, cfg, SpanDirection::Vertical);
  return st;
}

bool spanning_exists(const Lattice& lat, const OutcomeConfig& cfg, SpanDirection dir,
                     const Region* region) {
  const int rows = lattice_rows(lat);
  const int cols = lattice_cols(lat);
  Region reg = region ? *region : Region{0, rows, 0, cols};
  if (reg.row0 < 0 || reg.row1 > rows || reg.col0 < 0 || reg.col1 > cols)
    throw std::invalid_argument("spanning_exists: region out of bounds");
  const int span_len = dir == SpanDirection::Horizontal ? reg.col1 - reg.col0
                                                        : reg.row1 - reg.row0;
  const int other_len = dir == SpanDirection::Horizontal ? reg.row1 - reg.row0
                                                         : reg.col1 - reg.col0;
  if (span_len < 2 || other_len < 1)
    throw std::invalid_argument("spanning_exists: degenerate region");

  // Cut only the seam along the tested direction; the perpendicular
  // periodicity is kept.
  const bool cut_x = dir == SpanDirection::Horizontal;
  const bool cut_y = dir == SpanDirection::Vertical;
  const DomainDecomposition dec = label_domains(lat, cfg, cut_x, cut_y);
  const DomainGraph g = build_domain_graph(lat, dec);

  std::vector<char> in_region(dec.num_domains, 0);
  std::vector<char> at_start(dec.num_domains, 0);
  std::vector<char> at_end(dec.num_domains, 0);
  for (int r = reg.row0; r < reg.row1; ++r) {
    for (int c = reg.col0; c < reg.col1; ++c) {
      const int d = dec.domain_of[site_at(lat, r, c)];
      in_region[d] = 1;
      const int pos = dir == SpanDirection::Horizontal ? c : r;
      const int lo = dir == SpanDirection::Horizontal ? reg.col0 : reg.row0;
      const int hi = dir == SpanDirection::Horizontal ? reg.col1 : reg.row1;
      if (pos == lo) at_start[d] = 1;
      if (pos == hi - 1) at_end[d] = 1;
    }
  }

  std::vector<char> seen(dec.num_domains, 0);
  std::vector<int> queue;
  for (int d = 0; d < dec.num_domains; ++d)
    if (at_start[d]) {
      seen[d] = 1;
      queue.push_back(d);
    }
  while (!queue.empty()) {
    const int d = queue.back();
    queue.pop_back();
    if (at_end[d]) return true;
    for (int nb : g.adj_post[d]) {
      if (!in_region[nb] || seen[nb]) continue;
      seen[nb] = 1;
      queue.push_back(nb);
    }
  }
  return false;
}

double integrated_autocorr_time(const std::vector<double>& xs) {
  const long long n = static_cast<long long>(xs.size());
  if (n < 2) return 0.5;
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double c0 = 0;
  for (double x : xs) c0 += (x - mean) * (x - mean);
  c0 /= static_cast<double>(n);
  if (c0 <= 0) return 0.5;

  double tau = 0.5;
  const long long t_max = n / 4;
  for (long long t = 1; t <= t_max; ++t) {
    double ct = 0;
    for (long long i = 0; i + t < n; ++i) ct += (xs[i] - mean) * (xs[i + t] - mean);
    ct /= static_cast<double>(n - t);
    tau += ct / c0;
    // Sokal window: stop once the window has outgrown ~6 tau.
    if (static_cast<double>(t) >= 6.0 * tau) break;
  }
  return std::max(tau, 0.5);
}

MeanErr blocked_mean(const std::vector<double>& xs, uint64_t bootstrap_seed) {
  const long long n = static_cast<long long>(xs.size());
  if (n == 0) throw std::invalid_argument("blocked_mean: empty series");

  MeanErr out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(n);
  if (n == 1) {
    out.blocks = 1;
    return out;
  }

  out.tau = integrated_autocorr_time(xs);
  long long block_len = std::max<long long>(1, static_cast<long long>(std::ceil(10.0 * out.tau)));
  if (n / block_len < 2) block_len = n / 2;  // short series: degrade to two blocks
  const long long nb = n / block_len;
  std::vector<double> bm(nb, 0.0);
  for (long long b = 0; b < nb; ++b) {
    for (long long i = 0; i < block_len; ++i) bm[b] += xs[b * block_len + i];
    bm[b] /= static_cast<double>(block_len);
  }
  out.blocks = nb;

  double bmean = 0;
  for (double b : bm) bmean += b;
  bmean /= static_cast<double>(nb);
  double s2 = 0;
  for (double b : bm) s2 += (b - bmean) * (b - bmean);
  s2 /= static_cast<double>(nb - 1);
  out.err = std::sqrt(s2 / static_cast<double>(nb));

  // Block bootstrap over the same block means.
  const int nboot = 200;
  Rng rng = make_rng(bootstrap_seed);
  double bsum = 0, bsum2 = 0;
  for (int it = 0; it < nboot; ++it) {
    double m = 0;
    for (long long b = 0; b < nb; ++b) m += bm[uniform_below(rng, static_cast<uint64_t>(nb))];
    m /= static_cast<double>(nb);
    bsum += m;
    bsum2 += m * m;
  }
  bsum /= nboot;
  out.err_bootstrap = std::sqrt(std::max(0.0, bsum2 / nboot - bsum * bsum));
  return out;
}

std::vector<FieldSummary> aggregate_stats(const std::vector<GraphStats>& samples,
                                          const Lattice& lat) {
  if (samples.size() < 2)
    throw std::invalid_argument("aggregate_stats: need at least two samples");
  const double N = static_cast<double>(lat.num_sites);

  std::vector<FieldSummary> out;
  auto series = [&](const std::string& name, auto getter) {
    std::vector<double> xs(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) xs[i] = getter(samples[i]);
    out.push_back({name, blocked_mean(xs)});
  };
  series("domains_per_site", [&](const GraphStats& s) { return s.num_domains / N; });
  series("pre_edges_per_site", [&](const GraphStats& s) { return s.edges_pre / N; });
  series("post_edges_per_site", [&](const GraphStats& s) { return s.edges_post / N; });
  series("betti_per_site", [&](const GraphStats& s) { return s.betti / N; });
  series("mean_degree", [](const GraphStats& s) { return s.mean_degree; });
  series("mean_domain_size", [](const GraphStats& s) { return s.mean_domain_size; });
  series("domain_size_width", [](const GraphStats& s) { return s.domain_size_width; });
  series("largest_domain", [](const GraphStats& s) { return double(s.largest_domain); });
  series("spanning_x_fraction", [](const GraphStats& s) { return s.spans_x ? 1.0 : 0.0; });
  series("spanning_y_fraction", [](const GraphStats& s) { return s.spans_y ? 1.0 : 0.0; });
  return out;
}

LinFit weighted_linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& err) {
  const size_t n = x.size();
  if (n != y.size() || (!err.empty() && err.size() != n))
    throw std::invalid_argument("weighted_linear_fit: size mismatch");
  if (n < 2) throw std::invalid_argument("weighted_linear_fit: need at least two points");

  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (!err.empty()) {
      if (err[i] <= 0) throw std::invalid_argument("weighted_linear_fit: nonpositive error");
      w = 1.0 / (err[i] * err[i]);
    }
    S += w;
    Sx += w * x[i];
    Sy += w * y[i];
    Sxx += w * x[i] * x[i];
    Sxy += w * x[i] * y[i];
  }
  const double det = S * Sxx - Sx * Sx;
  if (det <= 0) throw std::invalid_argument("weighted_linear_fit: degenerate abscissae");

  LinFit fit;
  fit.a = (S * Sxy - Sx * Sy) / det;
  fit.b = (Sxx * Sy - Sx * Sxy) / det;
  fit.dof = static_cast<int>(n) - 2;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.a * x[i] + fit.b);
    const double w = err.empty() ? 1.0 : 1.0 / (err[i] * err[i]);
    fit.chi2 += w * r * r;
  }
  fit.a_err = std::sqrt(S / det);
  fit.b_err = std::sqrt(Sxx / det);
  if (err.empty()) {
    // Unweighted: scale parameter errors by the residual variance.
    const double s2 = fit.dof > 0 ? fit.chi2 / fit.dof : 0.0;
    fit.a_err *= std::sqrt(s2);
    fit.b_err *= std::sqrt(s2);
  }
  return fit;
}

LinFit fit_largest_domain(const std::vector<long long>& num_sites,
                          const std::vector<double>& mean_largest,
                          const std::vector<double>& errs) {
  if (num_sites.size() != mean_largest.size())
    throw std::invalid_argument("fit_largest_domain: size mismatch");
  std::vector<long long> distinct = num_sites;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw std::invalid_argument("fit_largest_domain: need at least three distinct sizes");
  std::vector<double> x(num_sites.size());
  for (size_t i = 0; i < num_sites.size(); ++i) {
    if (num_sites[i] < 1) throw std::invalid_argument("fit_largest_domain: bad system size");
    x[i] = std::log(static_cast<double>(num_sites[i]));
  }
  return weighted_linear_fit(x, mean_largest, errs);
}

double chi2_survival(double chi2, long long dof) {
  if (dof < 1) throw std::invalid_argument("chi2_survival: dof must be positive");
  if (chi2 <= 0) return 1.0;
  const double a = static_cast<double>(dof) / 2.0;
  const double x = chi2 / 2.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

}  // namespace aklt
