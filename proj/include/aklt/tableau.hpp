#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace aklt {

enum class Pauli : uint8_t { X = 0, Y = 1, Z = 2 };

enum class MeasureStatus {
  RandomProjected,  // outcome was random; requested branch selected
  Deterministic,    // requested outcome was already certain
  Impossible        // opposite outcome is certain; postselection invalid
};

// Stabilizer tableau for n <= 64 qubits, rows packed one uint64_t per
// Pauli block. Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers;
// each row carries a phase exponent r mod 4 (the operator is i^r * Pauli
// string). Stabilizer rows of a valid state keep r even.
class Tableau {
 public:
  explicit Tableau(int n);  // |0...0>
  static Tableau graph_state(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }

  void h(int q);
  void s(int q);
  void sdg(int q);
  void x(int q);
  void y(int q);
  void z(int q);
  void cnot(int c, int t);
  void cz(int a, int b);

  // Measure Pauli p on qubit q and postselect the given branch (+1 or -1).
  // On RandomProjected the tableau holds the selected branch exactly
  // (measured qubit stabilized by sign*p); on Deterministic it is unchanged.
  MeasureStatus measure_postselect(int q, Pauli p, int sign = +1);

  // Keep only the listed qubits (ascending), which must be in a product
  // state with the rest; throws std::logic_error otherwise. Measured-out
  // qubits satisfy this by construction.
  Tableau restrict_to(const std::vector<int>& keep) const;

  // Adjacency rows of a graph state locally Clifford-equivalent to this
  // state, obtained by symplectic Gaussian elimination.
  std::vector<uint64_t> to_graph_adjacency() const;

  // True iff the Pauli row (x mask, z mask, phase exponent r mod 4, i.e.
  // i^r X^x Z^z per qubit with Y = i X Z convention below) is an element of
  // the stabilizer group.
  bool group_contains(uint64_t xmask, uint64_t zmask, int phase) const;

  // Internal consistency: commutation structure, rank, real phases.
  bool check_valid() const;

 private:
  struct Row {
    uint64_t x = 0, z = 0;
    uint8_t r = 0;  // phase exponent mod 4
  };

  int n_;
  std::vector<Row> rows_;  // size 2n

  static int g_exponent(int x1, int z1, int x2, int z2);
  static void row_mult(Row& h, const Row& i, int n);
  Row measure_row(int q, Pauli p) const;

  friend class TableauTestAccess;
};

}  // namespace aklt
