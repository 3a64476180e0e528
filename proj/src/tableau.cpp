#include "aklt/tableau.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace aklt {

namespace {

inline bool bit(uint64_t w, int q) { return (w >> q) & 1; }

}  // namespace

Tableau::Tableau(int n) : n_(n), rows_(2 * n) {
  if (n < 0 || n > 64) throw std::invalid_argument("tableau supports 0..64 qubits");
  for (int i = 0; i < n; ++i) {
    rows_[i].x = 1ull << i;       // destabilizer X_i
    rows_[n + i].z = 1ull << i;   // stabilizer Z_i
  }
}

Tableau Tableau::graph_state(int n, const std::vector<std::pair<int, int>>& edges) {
  Tableau t(n);
  for (int q = 0; q < n; ++q) t.h(q);
  for (auto [u, v] : edges) t.cz(u, v);
  return t;
}

// Exponent of i in the single-qubit product P1 * P2 (AG convention: bit
// pair (x,z) = (1,1) denotes Y itself).
int Tableau::g_exponent(int x1, int z1, int x2, int z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return z2 - x2;
  if (x1) return z2 * (2 * x2 - 1);
  return x2 * (1 - 2 * z2);
}

void Tableau::row_mult(Row& h, const Row& i, int n) {
  int phase = h.r + i.r;
  for (int q = 0; q < n; ++q)
    phase += g_exponent(bit(i.x, q), bit(i.z, q), bit(h.x, q), bit(h.z, q));
  // h := i * h  (order matters only through the accumulated phase; the
  // exponent above is for i's letter times h's letter).
  h.x ^= i.x;
  h.z ^= i.z;
  h.r = static_cast<uint8_t>(((phase % 4) + 4) % 4);
}

void Tableau::h(int q) {
  const uint64_t m = 1ull << q;
  for (Row& row : rows_) {
    if ((row.x & m) && (row.z & m)) row.r = (row.r + 2) & 3;
    const bool xb = row.x & m, zb = row.z & m;
    row.x = xb == zb ? row.x : (row.x ^ m);
    row.z = xb == zb ? row.z : (row.z ^ m);
  }
}

void Tableau::s(int q) {
  const uint64_t m = 1ull << q;
  for (Row& row : rows_) {
    if ((row.x & m) && (row.z & m)) row.r = (row.r + 2) & 3;
    if (row.x & m) row.z ^= m;
  }
}

void Tableau::sdg(int q) {
  const uint64_t m = 1ull << q;
  for (Row& row : rows_) {
    if ((row.x & m) && !(row.z & m)) row.r = (row.r + 2) & 3;
    if (row.x & m) row.z ^= m;
  }
}

void Tableau::x(int q) {
  const uint64_t m = 1ull << q;
  for (Row& row : rows_)
    if (row.z & m) row.r = (row.r + 2) & 3;
}

void Tableau::z(int q) {
  const uint64_t m = 1ull << q;
  for (Row& row : rows_)
    if (row.x & m) row.r = (row.r + 2) & 3;
}

void Tableau::y(int q) {
  const uint64_t m = 1ull << q;
  for (Row& row : rows_)
    if (bool(row.x & m) != bool(row.z & m)) row.r = (row.r + 2) & 3;
}

void Tableau::cnot(int c, int t) {
  const uint64_t mc = 1ull << c, mt = 1ull << t;
  for (Row& row : rows_) {
    if ((row.x & mc) && (row.z & mt) && (bool(row.x & mt) == bool(row.z & mc)))
      row.r = (row.r + 2) & 3;
    if (row.x & mc) row.x ^= mt;
    if (row.z & mt) row.z ^= mc;
  }
}

void Tableau::cz(int a, int b) {
  h(b);
  cnot(a, b);
  h(b);
}

MeasureStatus Tableau::measure_postselect(int q, Pauli p, int sign) {
  // Rotate so that measuring p becomes measuring Z.
  if (p == Pauli::X) {
    h(q);
  } else if (p == Pauli::Y) {
    sdg(q);
    h(q);
  }
  // Selecting the -1 branch of Z equals conjugating the +1 selection by an X
  // flip; the matching flip after the projection is applied further down, so
  // the tableau ends up holding the selected branch itself.
  if (sign < 0) x(q);

  MeasureStatus status;
  const uint64_t m = 1ull << q;
  int pivot = -1;
  for (int i = n_; i < 2 * n_; ++i)
    if (rows_[i].x & m) {
      pivot = i;
      break;
    }
  if (pivot >= 0) {
    for (int i = 0; i < 2 * n_; ++i)
      if (i != pivot && (rows_[i].x & m)) row_mult(rows_[i], rows_[pivot], n_);
    rows_[pivot - n_] = rows_[pivot];
    rows_[pivot] = Row{0, m, 0};
    status = MeasureStatus::RandomProjected;
  } else {
    Row scratch;
    for (int i = 0; i < n_; ++i)
      if (rows_[i].x & m) row_mult(scratch, rows_[n_ + i], n_);
    assert(scratch.x == 0 && scratch.z == m);
    status = scratch.r == 0 ? MeasureStatus::Deterministic : MeasureStatus::Impossible;
  }
  if (sign < 0) x(q);

  if (p == Pauli::X) {
    h(q);
  } else if (p == Pauli::Y) {
    h(q);
    s(q);
  }
  return status;
}

bool Tableau::group_contains(uint64_t xmask, uint64_t zmask, int phase) const {
  // Reduce the target against an echelonized copy of the stabilizer rows,
  // building the matching group element in acc; membership iff exact match
  // including phase.
  std::vector<Row> rows(rows_.begin() + n_, rows_.end());
  Row acc;
  Row target{xmask, zmask, static_cast<uint8_t>(((phase % 4) + 4) % 4)};
  int top = 0;
  for (int col = 0; col < 2 * n_ && top < n_; ++col) {
    const uint64_t m = 1ull << (col % n_);
    const bool use_x = col < n_;
    int pivot = -1;
    for (int i = top; i < n_; ++i)
      if ((use_x ? rows[i].x : rows[i].z) & m) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[top], rows[pivot]);
    for (int i = 0; i < n_; ++i)
      if (i != top && ((use_x ? rows[i].x : rows[i].z) & m)) row_mult(rows[i], rows[top], n_);
    if ((use_x ? (target.x ^ acc.x) : (target.z ^ acc.z)) & m) row_mult(acc, rows[top], n_);
    ++top;
  }
  return acc.x == target.x && acc.z == target.z && acc.r == target.r;
}

bool Tableau::check_valid() const {
  auto anticommute = [&](const Row& a, const Row& b) {
    return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1;
  };
  for (int i = 0; i < n_; ++i) {
    if (rows_[n_ + i].r & 1) return false;
    if (!anticommute(rows_[i], rows_[n_ + i])) return false;
    for (int j = 0; j < n_; ++j) {
      if (i != j && anticommute(rows_[n_ + i], rows_[n_ + j])) return false;
      if (i != j && anticommute(rows_[i], rows_[n_ + j])) return false;
      if (i != j && anticommute(rows_[i], rows_[j])) return false;
    }
  }
  return true;
}

namespace {

struct GraphForm {
  std::vector<uint64_t> adj;
  std::vector<std::pair<char, int>> ops;  // 'h', 's', 'z' applied in order
};

}  // namespace

// Reduce k stabilizer rows on k qubits to graph form, recording the local
// gates applied. Helper shared by to_graph_adjacency and restrict_to.
struct TableauTestAccess {
  static GraphForm graph_form(std::vector<Tableau::Row> rows, int k) {
    GraphForm gf;
    auto apply_h = [&](int q) {
      const uint64_t m = 1ull << q;
      for (auto& row : rows) {
        if ((row.x & m) && (row.z & m)) row.r = (row.r + 2) & 3;
        const bool xb = row.x & m, zb = row.z & m;
        if (xb != zb) {
          row.x ^= m;
          row.z ^= m;
        }
      }
      gf.ops.push_back({'h', q});
    };

    // Make the X block invertible, applying H where it is rank-deficient.
    for (int pass = 0; pass <= k; ++pass) {
      // Row-echelon over x columns.
      int top = 0;
      uint64_t pivot_cols = 0;
      for (int col = 0; col < k && top < k; ++col) {
        int pivot = -1;
        for (int i = top; i < k; ++i)
          if (bit(rows[i].x, col)) {
            pivot = i;
            break;
          }
        if (pivot < 0) continue;
        std::swap(rows[top], rows[pivot]);
        for (int i = 0; i < k; ++i)
          if (i != top && bit(rows[i].x, col)) Tableau::row_mult(rows[i], rows[top], k);
        pivot_cols |= 1ull << col;
        ++top;
      }
      if (top == k) break;
      if (pass == k) throw std::logic_error("graph-form reduction did not converge");
      // Each zero-x row is a Z string with support on a non-pivot column.
      const uint64_t zmask = rows[top].z & ~pivot_cols;
      if (rows[top].x != 0 || zmask == 0)
        throw std::logic_error("graph-form reduction: unexpected row structure");
      apply_h(std::countr_zero(zmask));
    }

    // Gauss-Jordan the X block to the identity (pure row operations).
    for (int col = 0; col < k; ++col) {
      int pivot = -1;
      for (int i = col; i < k; ++i)
        if (bit(rows[i].x, col)) {
          pivot = i;
          break;
        }
      if (pivot < 0) throw std::logic_error("graph-form reduction: X block singular");
      std::swap(rows[col], rows[pivot]);
      for (int i = 0; i < k; ++i)
        if (i != col && bit(rows[i].x, col)) Tableau::row_mult(rows[i], rows[col], k);
    }

    // Clear the Z diagonal with S and the signs with Z.
    for (int j = 0; j < k; ++j) {
      if (bit(rows[j].z, j)) {
        const uint64_t m = 1ull << j;
        for (auto& row : rows) {
          if ((row.x & m) && (row.z & m)) row.r = (row.r + 2) & 3;
          if (row.x & m) row.z ^= m;
        }
        gf.ops.push_back({'s', j});
      }
      if (rows[j].r & 1) throw std::logic_error("graph-form reduction: imaginary phase");
      if (rows[j].r == 2) {
        rows[j].r = 0;
        gf.ops.push_back({'z', j});
      }
    }
    gf.adj.resize(k);
    for (int j = 0; j < k; ++j) {
      if (rows[j].x != (1ull << j)) throw std::logic_error("graph-form reduction failed");
      gf.adj[j] = rows[j].z;
    }
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (bit(gf.adj[a], b) != bit(gf.adj[b], a))
          throw std::logic_error("graph-form adjacency not symmetric");
    return gf;
  }

  static Tableau from_graph_form(const GraphForm& gf, int k) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (bit(gf.adj[a], b)) edges.push_back({a, b});
    Tableau t = Tableau::graph_state(k, edges);
    for (auto it = gf.ops.rbegin(); it != gf.ops.rend(); ++it) {
      if (it->first == 'h')
        t.h(it->second);
      else if (it->first == 's')
        t.sdg(it->second);
      else
        t.z(it->second);
    }
    return t;
  }
};

std::vector<uint64_t> Tableau::to_graph_adjacency() const {
  std::vector<Row> stab(rows_.begin() + n_, rows_.end());
  return TableauTestAccess::graph_form(std::move(stab), n_).adj;
}

Tableau Tableau::restrict_to(const std::vector<int>& keep) const {
  uint64_t keep_mask = 0;
  for (int q : keep) keep_mask |= 1ull << q;
  const uint64_t drop_mask = ((n_ == 64 ? ~0ull : (1ull << n_) - 1)) & ~keep_mask;

  // Full Gauss-Jordan over dropped columns first (x then z per qubit), then
  // keep columns. For a product state the unique reduced basis contains one
  // single-qubit P row per dropped qubit and keep-only rows otherwise.
  std::vector<Row> rows(rows_.begin() + n_, rows_.end());
  std::vector<std::pair<bool, int>> cols;  // (use_x, qubit)
  for (int q = 0; q < n_; ++q)
    if (drop_mask >> q & 1) {
      cols.push_back({true, q});
      cols.push_back({false, q});
    }
  for (int q : keep) {
    cols.push_back({true, q});
    cols.push_back({false, q});
  }
  int top = 0;
  for (auto [use_x, q] : cols) {
    if (top >= n_) break;
    const uint64_t m = 1ull << q;
    int pivot = -1;
    for (int i = top; i < n_; ++i)
      if ((use_x ? rows[i].x : rows[i].z) & m) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[top], rows[pivot]);
    for (int i = 0; i < n_; ++i)
      if (i != top && ((use_x ? rows[i].x : rows[i].z) & m)) row_mult(rows[i], rows[top], n_);
    ++top;
  }

  std::vector<Row> kept_rows;
  int dropped_rows = 0;
  for (const Row& row : rows) {
    const uint64_t support = row.x | row.z;
    if (support & drop_mask) {
      // Must be a single-qubit Pauli on one dropped qubit; its sign only
      // describes the discarded qubit's local state, so both are accepted.
      const uint64_t dsup = support & drop_mask;
      if ((support & keep_mask) || (dsup & (dsup - 1)) || (row.r & 1))
        throw std::logic_error("restrict_to: dropped qubits are entangled");
      ++dropped_rows;
    } else {
      kept_rows.push_back(row);
    }
  }
  if (dropped_rows != std::popcount(drop_mask) ||
      kept_rows.size() != keep.size())
    throw std::logic_error("restrict_to: rank mismatch");

  // Remap columns to the new dense indexing.
  const int k = static_cast<int>(keep.size());
  std::vector<Row> remapped(k);
  for (int i = 0; i < k; ++i) {
    Row nr;
    nr.r = kept_rows[i].r;
    for (int j = 0; j < k; ++j) {
      if (kept_rows[i].x >> keep[j] & 1) nr.x |= 1ull << j;
      if (kept_rows[i].z >> keep[j] & 1) nr.z |= 1ull << j;
    }
    remapped[i] = nr;
  }
  GraphForm gf = TableauTestAccess::graph_form(remapped, k);
  Tableau t = TableauTestAccess::from_graph_form(gf, k);
  for (const Row& row : remapped)
    if (!t.group_contains(row.x, row.z, row.r))
      throw std::logic_error("restrict_to: reconstruction mismatch");
  return t;
}

}  // namespace aklt
