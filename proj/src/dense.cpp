#include "aklt/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aklt {

namespace {

constexpr int kMaxQubits = 24;
constexpr double kSqrtHalf = 0.70710678118654752440;

void check_cap(int q, const char* what) {
  if (q < 1 || q > kMaxQubits)
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(q) +
                                " qubits is outside the supported range [1, " +
                                std::to_string(kMaxQubits) + "]");
}

DenseMat sigma_mat(Axis a) {
  switch (a) {
    case Axis::X: return {cd(0), cd(1), cd(1), cd(0)};
    case Axis::Y: return {cd(0), cd(0, -1), cd(0, 1), cd(0)};
    default:      return {cd(1), cd(0), cd(0), cd(-1)};
  }
}

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// In-place 2^k x 2^k operator on the contiguous qubit block [lo, lo+k).
void apply_block_op(DenseState& st, int lo, int k, const DenseMat& M) {
  const uint64_t D = 1ull << k;
  if (M.size() != D * D) throw std::invalid_argument("apply_block_op: matrix size mismatch");
  const uint64_t low_n = 1ull << lo;
  const uint64_t high_n = 1ull << (st.num_qubits - lo - k);
  std::vector<cd> v(D), w(D);
  for (uint64_t hi = 0; hi < high_n; ++hi)
    for (uint64_t lob = 0; lob < low_n; ++lob) {
      const uint64_t base = (hi << (lo + k)) | lob;
      for (uint64_t m = 0; m < D; ++m) v[m] = st.amp[base | (m << lo)];
      for (uint64_t r = 0; r < D; ++r) {
        cd acc(0);
        const cd* row = &M[r * D];
        for (uint64_t m = 0; m < D; ++m) acc += row[m] * v[m];
        w[r] = acc;
      }
      for (uint64_t r = 0; r < D; ++r) st.amp[base | (r << lo)] = w[r];
    }
}

// Contracts the qubit block [lo, lo+k) against the two kets; the branch
// index becomes a fresh qubit at position lo, so the state shrinks by k-1
// qubits. Computes <ket_b|block>, i.e. kets enter conjugated.
DenseState contract_block(const DenseState& in, int lo, int k,
                          const std::vector<cd>& ket0, const std::vector<cd>& ket1) {
  const uint64_t D = 1ull << k;
  DenseState out;
  out.num_qubits = in.num_qubits - k + 1;
  out.amp.assign(1ull << out.num_qubits, cd(0));
  const uint64_t low_n = 1ull << lo;
  const uint64_t high_n = 1ull << (in.num_qubits - lo - k);
  for (uint64_t hi = 0; hi < high_n; ++hi)
    for (uint64_t lob = 0; lob < low_n; ++lob) {
      const uint64_t in_base = (hi << (lo + k)) | lob;
      cd s0(0), s1(0);
      for (uint64_t m = 0; m < D; ++m) {
        const cd v = in.amp[in_base | (m << lo)];
        s0 += std::conj(ket0[m]) * v;
        s1 += std::conj(ket1[m]) * v;
      }
      const uint64_t out_base = (hi << (lo + 1)) | lob;
      out.amp[out_base] = s0;
      out.amp[out_base | (1ull << lo)] = s1;
    }
  return out;
}

// Product over slots of sigma_{axes[slot]} as a 2^k x 2^k matrix; local
// index bit j is slot j.
DenseMat slot_sigma_product(const std::vector<Axis>& axes) {
  const int k = static_cast<int>(axes.size());
  const uint64_t D = 1ull << k;
  std::vector<DenseMat> s;
  for (Axis a : axes) s.push_back(sigma_mat(a));
  DenseMat M(D * D);
  for (uint64_t r = 0; r < D; ++r)
    for (uint64_t c = 0; c < D; ++c) {
      cd prod(1);
      for (int j = 0; j < k; ++j) prod *= s[j][((r >> j) & 1) * 2 + ((c >> j) & 1)];
      M[r * D + c] = prod;
    }
  return M;
}

// 2x2 compression of a site operator onto span{|aa..>, |AA..>}; throws if
// the operator leaks out of that span, which would make the compressed
// expectation meaningless.
DenseMat compress_site_op(const DenseMat& M, Axis a, int k) {
  const uint64_t D = 1ull << k;
  const std::vector<cd> u[2] = {axis_eigenstate(a, +1, k), axis_eigenstate(a, -1, k)};
  DenseMat m(4, cd(0));
  for (int q = 0; q < 2; ++q) {
    std::vector<cd> Mu(D, cd(0));
    for (uint64_t r = 0; r < D; ++r) {
      cd acc(0);
      for (uint64_t c = 0; c < D; ++c) acc += M[r * D + c] * u[q][c];
      Mu[r] = acc;
    }
    for (int p = 0; p < 2; ++p) {
      cd val(0);
      for (uint64_t r = 0; r < D; ++r) val += std::conj(u[p][r]) * Mu[r];
      m[p * 2 + q] = val;
    }
    for (uint64_t r = 0; r < D; ++r) {
      const cd resid = Mu[r] - (u[0][r] * m[0 * 2 + q] + u[1][r] * m[1 * 2 + q]);
      if (std::abs(resid) > 1e-12)
        throw std::logic_error("site operator does not preserve the outcome subspace");
    }
  }
  return m;
}

// Projects qubit pos onto (|0> + sign|1>)/sqrt(2) and removes it.
DenseState project_x(const DenseState& in, int pos, int sign) {
  DenseState out;
  out.num_qubits = in.num_qubits - 1;
  out.amp.assign(1ull << out.num_qubits, cd(0));
  const uint64_t low_n = 1ull << pos;
  const uint64_t high_n = 1ull << (in.num_qubits - pos - 1);
  const double s = sign < 0 ? -kSqrtHalf : kSqrtHalf;
  for (uint64_t hi = 0; hi < high_n; ++hi)
    for (uint64_t lob = 0; lob < low_n; ++lob) {
      const uint64_t in0 = (hi << (pos + 1)) | lob;
      out.amp[(hi << pos) | lob] =
          kSqrtHalf * in.amp[in0] + s * in.amp[in0 | (1ull << pos)];
    }
  return out;
}

void check_config(const Lattice& lat, const OutcomeConfig& config) {
  if (static_cast<int>(config.size()) != lat.num_sites)
    throw std::invalid_argument("outcome configuration size does not match the lattice");
}

struct CheckAccum {
  EncodedCheck res;
  CheckAccum() { res.ok = true; }
  void note(cd e) {
    const double dev = std::abs(e - cd(1));
    res.worst = std::max(res.worst, dev);
    ++res.checks;
    if (!(dev <= 1e-10)) res.ok = false;
  }
};

EncodedCheck run_encoded_checks(const Lattice& lat, const Decomposed& dd,
                                const DenseState& psi) {
  CheckAccum acc;
  const int N = lat.num_sites;
  const double n2 = psi.norm2();

  // Same-outcome lattice edges carry -ZZ between the compressed site qubits.
  for (const Edge& e : lat.edges) {
    if (dd.dec.domain_of[e.u] != dd.dec.domain_of[e.v]) continue;
    PauliString p;
    p.mul(e.u, Axis::Z, -1);
    p.mul(e.v, Axis::Z);
    acc.note(pauli_expectation(psi, p) / n2);
  }

  // Terminator bonds carry -sigma_a(terminator) Z(site).
  for (int t = 0; t < lat.num_terminators(); ++t) {
    const int v = lat.terminators[t].site;
    const Axis av = dd.dec.axis[dd.dec.domain_of[v]];
    PauliString p;
    p.mul(N + t, av, -1);
    p.mul(v, Axis::Z);
    acc.note(pauli_expectation(psi, p) / n2);
  }

  // One graph generator per domain: the product of one bond stabilizer per
  // bond touching the domain. Inter-domain bonds use the neighbor's axis,
  // internal and terminator bonds any axis b differing from the domain's,
  // so every slot of every member site is covered and the product commutes
  // with the site measurements. Each factor is a -sigma sigma bond
  // stabilizer, so the product stabilizes the state with sign
  // (-1)^(number of factors) exactly.
  for (int c = 0; c < dd.dec.num_domains; ++c) {
    const Axis ac = dd.dec.axis[c];
    const Axis b = static_cast<Axis>((static_cast<int>(ac) + 1) % 3);
    std::vector<std::pair<int, DenseMat>> ops;
    int factors = 0;
    for (int v : dd.dec.members[c]) {
      std::vector<Axis> slot_axis(lat.qubits_per_site, b);
      for (int eid : lat.incident[v]) {
        const Edge& e = lat.edges[eid];
        const int slot = e.u == v ? e.u_slot : e.v_slot;
        const int dw = dd.dec.domain_of[lat.other_end(eid, v)];
        slot_axis[slot] = dw == c ? b : dd.dec.axis[dw];
      }
      ops.emplace_back(v, compress_site_op(slot_sigma_product(slot_axis), ac,
                                           lat.qubits_per_site));
    }
    std::vector<int> zpar(N, 0);
    for (const Edge& e : lat.edges) {
      const int du = dd.dec.domain_of[e.u], dv = dd.dec.domain_of[e.v];
      if (du == c && dv == c) {
        ++factors;
      } else if (du == c) {
        ++factors;
        zpar[e.v] ^= 1;
      } else if (dv == c) {
        ++factors;
        zpar[e.u] ^= 1;
      }
    }
    for (int t = 0; t < lat.num_terminators(); ++t)
      if (dd.dec.domain_of[lat.terminators[t].site] == c) {
        ++factors;
        ops.emplace_back(N + t, sigma_mat(b));
      }
    for (int w = 0; w < N; ++w)
      if (zpar[w]) ops.emplace_back(w, sigma_mat(Axis::Z));
    const double sgn = (factors & 1) ? -1.0 : 1.0;
    acc.note(local_ops_expectation(psi, ops) * sgn / n2);
  }
  return acc.res;
}

}  // namespace

double DenseState::norm2() const {
  long double acc = 0;
  for (const cd& a : amp)
    acc += static_cast<long double>(a.real()) * a.real() +
           static_cast<long double>(a.imag()) * a.imag();
  return static_cast<double>(acc);
}

std::array<cd, 2> axis_eigenvector(Axis a, int sign) {
  const double s = sign < 0 ? -1.0 : 1.0;
  switch (a) {
    case Axis::X: return {cd(kSqrtHalf), cd(s * kSqrtHalf)};
    case Axis::Y: return {cd(kSqrtHalf), cd(0, s * kSqrtHalf)};
    default:      return sign < 0 ? std::array<cd, 2>{cd(0), cd(1)}
                                  : std::array<cd, 2>{cd(1), cd(0)};
  }
}

std::vector<cd> axis_eigenstate(Axis a, int sign, int n) {
  const std::array<cd, 2> v = axis_eigenvector(a, sign);
  std::vector<cd> out(1ull << n);
  for (uint64_t m = 0; m < out.size(); ++m) {
    cd prod(1);
    for (int j = 0; j < n; ++j) prod *= v[(m >> j) & 1];
    out[m] = prod;
  }
  return out;
}

DenseMat povm_element(Axis a, int qubits_per_site) {
  if (qubits_per_site != 2 && qubits_per_site != 3)
    throw std::invalid_argument("povm_element: sites carry 2 or 3 qubits");
  const uint64_t D = 1ull << qubits_per_site;
  const double c = qubits_per_site == 3 ? std::sqrt(2.0 / 3.0) : kSqrtHalf;
  const std::vector<cd> u = axis_eigenstate(a, +1, qubits_per_site);
  const std::vector<cd> w = axis_eigenstate(a, -1, qubits_per_site);
  DenseMat F(D * D);
  for (uint64_t i = 0; i < D; ++i)
    for (uint64_t j = 0; j < D; ++j)
      F[i * D + j] = c * (u[i] * std::conj(u[j]) + w[i] * std::conj(w[j]));
  return F;
}

DenseMat symmetric_projector(int n) {
  const uint64_t D = 1ull << n;
  DenseMat P(D * D, cd(0));
  for (uint64_t i = 0; i < D; ++i)
    for (uint64_t j = 0; j < D; ++j)
      if (std::popcount(i) == std::popcount(j))
        P[i * D + j] = 1.0 / binom(n, std::popcount(i));
  return P;
}

bool verify_povm_completeness(int qubits_per_site, double scale_z) {
  const uint64_t D = 1ull << qubits_per_site;
  DenseMat sum(D * D, cd(0));
  for (int a = 0; a < 3; ++a) {
    DenseMat F = povm_element(static_cast<Axis>(a), qubits_per_site);
    if (static_cast<Axis>(a) == Axis::Z)
      for (cd& f : F) f *= scale_z;
    for (uint64_t i = 0; i < D; ++i)
      for (uint64_t j = 0; j < D; ++j) {
        cd acc(0);
        for (uint64_t k = 0; k < D; ++k) acc += std::conj(F[k * D + i]) * F[k * D + j];
        sum[i * D + j] += acc;
      }
  }
  const DenseMat P = symmetric_projector(qubits_per_site);
  for (uint64_t i = 0; i < D * D; ++i)
    if (std::abs(sum[i] - P[i]) > 1e-12) return false;
  return true;
}

DenseState build_bond_state(const Lattice& lat) {
  const int Q = lat.total_qubits();
  check_cap(Q, "build_bond_state");
  std::vector<std::pair<int, int>> pairs;
  for (const Edge& e : lat.edges) {
    const int p = lat.qubit(e.u, e.u_slot), q = lat.qubit(e.v, e.v_slot);
    pairs.emplace_back(std::min(p, q), std::max(p, q));
  }
  for (int t = 0; t < lat.num_terminators(); ++t)
    pairs.emplace_back(lat.qubit(lat.terminators[t].site, lat.terminators[t].slot),
                       lat.terminator_qubit(t));
  if (static_cast<int>(pairs.size()) * 2 != Q)
    throw std::logic_error("bond layout is not a perfect matching on the qubits");
  DenseState st;
  st.num_qubits = Q;
  st.amp.assign(1ull << Q, cd(0));
  // Each bond contributes |01> - |10>; scatter all 2^(Q/2) sign patterns.
  for (uint64_t b = 0; b < (1ull << pairs.size()); ++b) {
    uint64_t idx = 0;
    for (size_t i = 0; i < pairs.size(); ++i)
      idx |= (b >> i) & 1 ? 1ull << pairs[i].first : 1ull << pairs[i].second;
    st.amp[idx] = (std::popcount(b) & 1) ? cd(-1) : cd(1);
  }
  return st;
}

DenseState build_aklt(const Lattice& lat) {
  DenseState st = build_bond_state(lat);
  const DenseMat P = symmetric_projector(lat.qubits_per_site);
  for (int v = 0; v < lat.num_sites; ++v)
    apply_block_op(st, v * lat.qubits_per_site, lat.qubits_per_site, P);
  return st;
}

DenseState post_povm_state(const Lattice& lat, const OutcomeConfig& config) {
  check_config(lat, config);
  DenseState st = build_bond_state(lat);
  for (int v = 0; v < lat.num_sites; ++v)
    apply_block_op(st, v * lat.qubits_per_site, lat.qubits_per_site,
                   povm_element(config[v], lat.qubits_per_site));
  return st;
}

void PauliString::mul(int qubit, Axis a, int sign) {
  const uint64_t bit = 1ull << qubit;
  if (used & bit) throw std::logic_error("PauliString: qubit already carries a factor");
  used |= bit;
  if (a != Axis::Z) x |= bit;
  if (a != Axis::X) z |= bit;
  if (a == Axis::Y) coeff *= cd(0, 1);
  if (sign < 0) coeff = -coeff;
}

cd pauli_expectation(const DenseState& psi, const PauliString& p) {
  cd acc(0);
  for (uint64_t s = 0; s < psi.amp.size(); ++s) {
    const cd& a = psi.amp[s];
    if (a == cd(0)) continue;
    const double sgn = (std::popcount(s & p.z) & 1) ? -1.0 : 1.0;
    acc += std::conj(psi.amp[s ^ p.x]) * (p.coeff * sgn) * a;
  }
  return acc;
}

cd local_ops_expectation(const DenseState& psi,
                         const std::vector<std::pair<int, DenseMat>>& ops) {
  DenseState t = psi;
  for (const auto& [q, M] : ops) apply_block_op(t, q, 1, M);
  cd acc(0);
  for (uint64_t i = 0; i < t.amp.size(); ++i) acc += std::conj(psi.amp[i]) * t.amp[i];
  return acc;
}

DenseState compress_config(const Lattice& lat, const OutcomeConfig& config) {
  check_config(lat, config);
  DenseState st = build_bond_state(lat);
  const int k = lat.qubits_per_site;
  // After compressing sites 0..d-1 to one qubit each, site d's block starts
  // at qubit d.
  for (int d = 0; d < lat.num_sites; ++d)
    st = contract_block(st, d, k, axis_eigenstate(config[d], +1, k),
                        axis_eigenstate(config[d], -1, k));
  return st;
}

double site_weight(const Lattice& lat) {
  return lat.qubits_per_site == 3 ? 2.0 / 3.0 : 0.5;
}

void for_each_outcome(const Lattice& lat,
                      const std::function<void(const OutcomeConfig&,
                                               const DenseState&)>& fn) {
  const int N = lat.num_sites, k = lat.qubits_per_site;
  const DenseState bond = build_bond_state(lat);
  std::vector<cd> kets[3][2];
  for (int a = 0; a < 3; ++a) {
    kets[a][0] = axis_eigenstate(static_cast<Axis>(a), +1, k);
    kets[a][1] = axis_eigenstate(static_cast<Axis>(a), -1, k);
  }
  OutcomeConfig cfg(N, Axis::X);
  // Prefixes share their contractions: the state at depth d has sites < d
  // compressed, and one state per depth is alive at a time.
  std::function<void(int, const DenseState&)> rec = [&](int d, const DenseState& cur) {
    if (d == N) {
      fn(cfg, cur);
      return;
    }
    for (int a = 0; a < 3; ++a) {
      cfg[d] = static_cast<Axis>(a);
      const DenseState next = contract_block(cur, d, k, kets[a][0], kets[a][1]);
      rec(d + 1, next);
    }
  };
  rec(0, bond);
}

std::map<OutcomeConfig, double> exact_distribution(const Lattice& lat) {
  if (lat.num_sites > 10)
    throw std::invalid_argument("exact_distribution: instance exceeds 10 sites");
  double ground_n2 = 0;
  {
    const DenseState g = build_aklt(lat);
    ground_n2 = g.norm2();
  }
  std::map<OutcomeConfig, double> dist;
  long double total = 0;
  for_each_outcome(lat, [&](const OutcomeConfig& cfg, const DenseState& st) {
    const double w = st.norm2();
    dist.emplace(cfg, w);
    total += w;
  });
  const double scaled =
      std::pow(site_weight(lat), lat.num_sites) * static_cast<double>(total);
  if (std::abs(scaled - ground_n2) > 1e-10 * ground_n2)
    throw std::logic_error("outcome weights do not sum to the ground-state norm");
  for (auto& [cfg, p] : dist) p /= static_cast<double>(total);
  return dist;
}

EncodedCheck verify_encoded_cluster(const Lattice& lat, const OutcomeConfig& config) {
  return verify_encoded_cluster_compressed(lat, config, compress_config(lat, config));
}

EncodedCheck verify_encoded_cluster_compressed(const Lattice& lat,
                                               const OutcomeConfig& config,
                                               const DenseState& compressed) {
  check_config(lat, config);
  if (compressed.num_qubits != lat.num_sites + lat.num_terminators())
    throw std::invalid_argument("compressed state size does not match the lattice");
  const Decomposed dd = decompose(lat, config);
  if (!dd.log2w)
    throw std::domain_error("configuration has zero probability (odd internal cycle)");
  return run_encoded_checks(lat, dd, compressed);
}

EncodedCheck verify_encoded_cluster_full(const Lattice& lat, const OutcomeConfig& config) {
  check_config(lat, config);
  const Decomposed dd = decompose(lat, config);
  if (!dd.log2w)
    throw std::domain_error("configuration has zero probability (odd internal cycle)");
  const DenseState psi = post_povm_state(lat, config);
  const double n2 = psi.norm2();
  const int qps = lat.qubits_per_site;
  CheckAccum acc;

  // Intra-site alignment pairs (absorbed by compression): +sigma_a sigma_a
  // on neighboring slots of one site.
  for (int v = 0; v < lat.num_sites; ++v)
    for (int s = 0; s + 1 < qps; ++s) {
      PauliString p;
      p.mul(lat.qubit(v, s), config[v]);
      p.mul(lat.qubit(v, s + 1), config[v]);
      acc.note(pauli_expectation(psi, p) / n2);
    }

  // Same-outcome edges keep their -sigma_a sigma_a bond stabilizer.
  for (const Edge& e : lat.edges) {
    if (config[e.u] != config[e.v]) continue;
    PauliString p;
    p.mul(lat.qubit(e.u, e.u_slot), config[e.u], -1);
    p.mul(lat.qubit(e.v, e.v_slot), config[e.v]);
    acc.note(pauli_expectation(psi, p) / n2);
  }

  // Terminator bonds keep theirs along the site's outcome axis.
  for (int t = 0; t < lat.num_terminators(); ++t) {
    const Terminator& tm = lat.terminators[t];
    PauliString p;
    p.mul(lat.qubit(tm.site, tm.slot), config[tm.site], -1);
    p.mul(lat.terminator_qubit(t), config[tm.site]);
    acc.note(pauli_expectation(psi, p) / n2);
  }

  // Raw graph generators, one Pauli string per domain.
  for (int c = 0; c < dd.dec.num_domains; ++c) {
    const Axis b = static_cast<Axis>((static_cast<int>(dd.dec.axis[c]) + 1) % 3);
    PauliString p;
    for (const Edge& e : lat.edges) {
      const int du = dd.dec.domain_of[e.u], dv = dd.dec.domain_of[e.v];
      if (du != c && dv != c) continue;
      const Axis ax = (du == c && dv == c) ? b
                      : du == c            ? dd.dec.axis[dv]
                                           : dd.dec.axis[du];
      p.mul(lat.qubit(e.u, e.u_slot), ax, -1);
      p.mul(lat.qubit(e.v, e.v_slot), ax);
    }
    for (int t = 0; t < lat.num_terminators(); ++t) {
      const Terminator& tm = lat.terminators[t];
      if (dd.dec.domain_of[tm.site] != c) continue;
      p.mul(lat.qubit(tm.site, tm.slot), b, -1);
      p.mul(lat.terminator_qubit(t), b);
    }
    acc.note(pauli_expectation(psi, p) / n2);
  }
  return acc.res;
}

bool verify_domain_decoding(const Lattice& lat, const OutcomeConfig& config,
                            int domain, int kept_site) {
  check_config(lat, config);
  const Decomposed dd = decompose(lat, config);
  if (!dd.log2w)
    throw std::domain_error("configuration has zero probability (odd internal cycle)");
  if (domain < 0 || domain >= dd.dec.num_domains)
    throw std::invalid_argument("verify_domain_decoding: no such domain");
  const std::vector<int>& members = dd.dec.members[domain];
  if (std::find(members.begin(), members.end(), kept_site) == members.end())
    throw std::invalid_argument("verify_domain_decoding: kept site is not in the domain");
  std::vector<int> others;
  for (int v : members)
    if (v != kept_site) others.push_back(v);
  const int k = static_cast<int>(others.size());
  if (k == 0) return true;
  if (k > 12)
    throw std::invalid_argument("verify_domain_decoding: domain too large to sweep");

  const DenseState psi = compress_config(lat, config);
  DenseState ref;
  double ref_n2 = 0;
  bool have_ref = false;
  for (int order = 0; order < 2; ++order) {
    std::vector<int> seq = others;
    if (order == 1) std::reverse(seq.begin(), seq.end());
    for (uint64_t pattern = 0; pattern < (1ull << k); ++pattern) {
      DenseState phi = psi;
      std::vector<int> labels(psi.num_qubits);
      std::iota(labels.begin(), labels.end(), 0);
      double prev = phi.norm2();
      for (int w : seq) {
        const int bit =
            static_cast<int>(std::find(others.begin(), others.end(), w) - others.begin());
        const int sign = (pattern >> bit) & 1 ? -1 : +1;
        const int pos =
            static_cast<int>(std::find(labels.begin(), labels.end(), w) - labels.begin());
        phi = project_x(phi, pos, sign);
        labels.erase(labels.begin() + pos);
        const double n2 = phi.norm2();
        if (std::abs(n2 - prev / 2) > 1e-10 * prev) return false;
        prev = n2;
      }
      if (std::popcount(pattern) & 1) {
        // Each minus branch is repaid with the domain's logical Z; put it on
        // the kept site, where it differs from any other placement by at
        // most a sign.
        const int pos = static_cast<int>(
            std::find(labels.begin(), labels.end(), kept_site) - labels.begin());
        for (uint64_t i = 0; i < phi.amp.size(); ++i)
          if ((i >> pos) & 1) phi.amp[i] = -phi.amp[i];
      }
      if (!have_ref) {
        ref = phi;
        ref_n2 = prev;
        have_ref = true;
      } else {
        if (std::abs(prev - ref_n2) > 1e-10 * ref_n2) return false;
        cd ov(0);
        for (uint64_t i = 0; i < phi.amp.size(); ++i)
          ov += std::conj(ref.amp[i]) * phi.amp[i];
        if (std::abs(std::abs(ov) - ref_n2) > 1e-10 * ref_n2) return false;
      }
    }
  }
  return true;
}

}  // namespace aklt
