#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"

namespace aklt {

using cd = std::complex<double>;

// Dense amplitude vector over up to 24 qubits (256 MB of doubles at the
// cap); bit q of the index is qubit q. Used as ground truth on small
// instances, never in the samplers.
struct DenseState {
  int num_qubits = 0;
  std::vector<cd> amp;

  double norm2() const;
};

// Row-major 2^k x 2^k complex matrix, k implied by the size.
using DenseMat = std::vector<cd>;

// Eigenvector of sigma_a with eigenvalue sign (+1 or -1), e.g. |+> for
// (x, +1) and |1> for (z, -1).
std::array<cd, 2> axis_eigenvector(Axis a, int sign);

// n-fold tensor power of axis_eigenvector: |aa..a> or its flipped partner.
std::vector<cd> axis_eigenstate(Axis a, int sign, int n);

// Site measurement element for outcome a: sqrt(2/3)(|aaa><aaa|+|AAA><AAA|)
// on 3 qubits, or the 1/sqrt(2) two-qubit variant, A denoting the flipped
// eigenstate.
DenseMat povm_element(Axis a, int qubits_per_site);

// Projector onto the symmetric subspace of n qubits (rank n+1).
DenseMat symmetric_projector(int n);

// True iff sum_a F_a^dag F_a equals the symmetric projector elementwise
// within 1e-12. scale_z != 1 deliberately breaks F_z for negative controls.
bool verify_povm_completeness(int qubits_per_site, double scale_z = 1.0);

// Product of singlets |01> - |10> over all lattice bonds (the lower qubit
// index is the first tensor factor); terminator bonds included. Unnormalized.
DenseState build_bond_state(const Lattice& lat);

// Bond state with every site projected onto its symmetric subspace: the
// valence-bond ground state. Unnormalized.
DenseState build_aklt(const Lattice& lat);

// Applies the outcome's measurement element on every site of the bond
// state. The per-site symmetric projector is absorbed (F = F P_sym).
// Lives in the full virtual-qubit space, unnormalized.
DenseState post_povm_state(const Lattice& lat, const OutcomeConfig& config);

// Pauli string coeff * X^x Z^z acting as
//   P|s> = coeff * (-1)^popcount(s & z) |s ^ x>.
// mul(q, a, sign) appends sign * sigma_a on qubit q; each qubit may carry
// at most one factor, so no reordering phases arise.
struct PauliString {
  uint64_t x = 0, z = 0, used = 0;
  cd coeff = 1.0;
  void mul(int qubit, Axis a, int sign = +1);
};

// <psi|P|psi>, unnormalized.
cd pauli_expectation(const DenseState& psi, const PauliString& p);

// <psi|(product of 2x2 ops on the listed qubits)|psi>, unnormalized. Ops on
// distinct qubits commute; repeats on one qubit compose in list order.
cd local_ops_expectation(const DenseState& psi,
                         const std::vector<std::pair<int, DenseMat>>& ops);

// Compressed form of the post-measurement state: every site block is
// contracted against <aa..| and <AA..| so one qubit per site remains
// (|aa..> -> |0>, |AA..> -> |1>); terminator qubits keep their identity.
// Qubit order: sites 0..N-1, then terminators. The outcome probability is
// site_weight^N * norm2 / <ground|ground>.
DenseState compress_config(const Lattice& lat, const OutcomeConfig& config);

// Per-site norm factor linking compressed states to measurement elements:
// 2/3 for three-qubit sites, 1/2 for two-qubit sites.
double site_weight(const Lattice& lat);

// Shared-prefix depth-first sweep over all 3^N outcome configurations; the
// callback sees each configuration with its compressed state. Peak memory
// stays within about twice the bond-state vector.
void for_each_outcome(const Lattice& lat,
                      const std::function<void(const OutcomeConfig&,
                                               const DenseState&)>& fn);

// Exact outcome distribution: probability of every configuration, summing
// to 1. The raw total is cross-checked against the independently built
// ground-state norm to 1e-10 relative. Guarded to N <= 10 sites.
std::map<OutcomeConfig, double> exact_distribution(const Lattice& lat);

// Stabilizer verification that the post-measurement state is the encoded
// graph state of its domain graph. In the compressed space it checks that
//   - every same-outcome lattice edge carries -ZZ,
//   - every terminator bond carries -sigma_a(term) Z(site),
//   - every domain's graph generator (the product of one bond stabilizer
//     per bond touching the domain) has eigenvalue +1,
// all within 1e-10. Throws std::domain_error on a zero-probability
// configuration (a domain with an odd internal cycle).
struct EncodedCheck {
  bool ok = false;
  double worst = 0.0;  // max |<S> - 1| over all checks
  int checks = 0;
};
EncodedCheck verify_encoded_cluster(const Lattice& lat, const OutcomeConfig& config);
// Same, reusing an already compressed state (for sweeps).
EncodedCheck verify_encoded_cluster_compressed(const Lattice& lat,
                                               const OutcomeConfig& config,
                                               const DenseState& compressed);

// Slow cross-check of the same statement in the full virtual-qubit space:
// raw Pauli strings against post_povm_state, including the intra-site
// sigma_a sigma_a alignment pairs that compression absorbs. Keep to small
// instances; the state has 2^(total qubits) amplitudes.
EncodedCheck verify_encoded_cluster_full(const Lattice& lat, const OutcomeConfig& config);

// Checks the domain-reduction measurement: projecting every domain site but
// one onto (|aa..> +- |AA..>)/sqrt(2) halves the squared norm per branch,
// and all branch patterns and both elimination orders (ascending and
// descending site index) give the same reduced state up to global phase
// once each minus branch is repaid with a Z on the kept site. Throws
// std::domain_error on a zero-probability configuration.
bool verify_domain_decoding(const Lattice& lat, const OutcomeConfig& config,
                            int domain, int kept_site);

}  // namespace aklt
