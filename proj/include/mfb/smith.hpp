#pragma once

// Smith normal form over Z with arbitrary-precision entries, and the finitely
// generated abelian groups it describes.
//
// The kernel runs in two phases. A sparse sweep first eliminates every +-1
// pivot (each such pivot contributes an invariant factor 1); presentation
// matrices of covers are dominated by these. The residual block is then
// diagonalized densely.

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mfb/error.hpp"

namespace mfb {

using BigInt = boost::multiprecision::cpp_int;

class SparseIntMatrix {
 public:
  struct Entry {
    std::size_t col;
    BigInt value;
  };
  using Row = std::vector<Entry>;  // sorted by col, no zeros

  SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseIntMatrix from_dense(const std::vector<std::vector<long>>& dense) {
    const std::size_t cols = dense.empty() ? 0 : dense.front().size();
    SparseIntMatrix m(dense.size(), cols);
    for (std::size_t r = 0; r < dense.size(); ++r) {
      if (dense[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged dense matrix");
      for (std::size_t c = 0; c < cols; ++c)
        if (dense[r][c] != 0) m.rows_[r].push_back(Entry{c, BigInt(dense[r][c])});
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const Row& row(std::size_t r) const { return rows_[r]; }

  std::size_t add_row() {
    rows_.emplace_back();
    return rows_.size() - 1;
  }

  /// Accumulates into (r, c).
  void add(std::size_t r, std::size_t c, const BigInt& value) {
    if (c >= cols_) throw Error(ErrorKind::DimensionMismatch, "column index out of range");
    if (value == 0) return;
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.col < col; });
    if (it != row.end() && it->col == c) {
      it->value += value;
      if (it->value == 0) row.erase(it);
    } else {
      row.insert(it, Entry{c, value});
    }
  }

  BigInt at(std::size_t r, std::size_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.col < col; });
    return (it != row.end() && it->col == c) ? it->value : BigInt(0);
  }

  const std::vector<Row>& all_rows() const noexcept { return rows_; }

  std::size_t nonzeros() const {
    std::size_t nnz = 0;
    for (const auto& r : rows_) nnz += r.size();
    return nnz;
  }

 private:
  std::size_t cols_;
  std::vector<Row> rows_;
};

struct SmithResult {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Nonzero invariant factors, positive, d_1 | d_2 | ...; length = rank.
  std::vector<BigInt> diagonal;

  std::size_t rank() const noexcept { return diagonal.size(); }
};

struct SmithKernel {
  // row_a -= factor * row_b, both sorted sparse rows
  static void axpy(SparseIntMatrix::Row& row_a, const BigInt& factor, const SparseIntMatrix::Row& row_b) {
    SparseIntMatrix::Row out;
    out.reserve(row_a.size() + row_b.size());
    std::size_t i = 0, j = 0;
    while (i < row_a.size() || j < row_b.size()) {
      if (j == row_b.size() || (i < row_a.size() && row_a[i].col < row_b[j].col)) {
        out.push_back(std::move(row_a[i++]));
      } else if (i == row_a.size() || row_b[j].col < row_a[i].col) {
        out.push_back({row_b[j].col, -factor * row_b[j].value});
        ++j;
      } else {
        BigInt v = row_a[i].value - factor * row_b[j].value;
        if (v != 0) out.push_back({row_a[i].col, std::move(v)});
        ++i, ++j;
      }
    }
    row_a = std::move(out);
  }

  static const BigInt* find(const SparseIntMatrix::Row& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const SparseIntMatrix::Entry& e, std::size_t c) { return e.col < c; });
    return (it != row.end() && it->col == col) ? &it->value : nullptr;
  }

  /// Removes unit pivots; returns how many were removed. Leaves the
  /// remaining rows (with the eliminated columns empty) in `rows`.
  static std::size_t eliminate_units(std::vector<SparseIntMatrix::Row>& rows, std::size_t cols) {
    std::size_t units = 0;
    std::vector<char> alive(rows.size(), 1);
    std::vector<std::size_t> col_count(cols);
    for (;;) {
      std::fill(col_count.begin(), col_count.end(), 0);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (alive[r])
          for (const auto& e : rows[r]) ++col_count[e.col];

      // Markowitz choice among unit entries
      std::size_t best_row = rows.size(), best_col = 0, best_cost = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!alive[r]) continue;
        if (rows[r].empty()) {
          alive[r] = 0;
          continue;
        }
        for (const auto& e : rows[r]) {
          if (e.value != 1 && e.value != -1) continue;
          const std::size_t cost = (rows[r].size() - 1) * (col_count[e.col] - 1);
          if (best_row == rows.size() || cost < best_cost) {
            best_row = r, best_col = e.col, best_cost = cost;
            if (cost == 0) break;
          }
        }
        if (best_row != rows.size() && best_cost == 0) break;
      }
      if (best_row == rows.size()) break;

      const BigInt unit = *find(rows[best_row], best_col);
      const auto pivot = rows[best_row];
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!alive[r] || r == best_row) continue;
        if (const BigInt* a = find(rows[r], best_col)) axpy(rows[r], BigInt(*a * unit), pivot);
      }
      alive[best_row] = 0;
      rows[best_row].clear();
      ++units;
    }
    return units;
  }

  static std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a.front().size() : 0;
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      // smallest nonzero in the trailing block
      auto move_min_to_pivot = [&]() -> bool {
        std::size_t bi = m, bj = n;
        for (std::size_t i = t; i < m; ++i)
          for (std::size_t j = t; j < n; ++j)
            if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
        if (bi == m) return false;
        std::swap(a[t], a[bi]);
        for (auto& row : a) std::swap(row[t], row[bj]);
        return true;
      };
      if (!move_min_to_pivot()) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a[i][t] == 0) continue;
          const BigInt q = a[i][t] / a[t][t];
          for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
          if (a[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[t][j] == 0) continue;
          const BigInt q = a[t][j] / a[t][t];
          for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
          if (a[t][j] != 0) clean = false;
        }
        if (!clean) {
          move_min_to_pivot();
          continue;
        }
        // pivot must divide the whole trailing block
        std::size_t bad = m;
        for (std::size_t i = t + 1; i < m && bad == m; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a[i][j] % a[t][t] != 0) {
              bad = i;
              break;
            }
        if (bad == m) break;
        for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
      }
      diag.push_back(abs(a[t][t]));
    }
    return diag;
  }
};

inline SmithResult smith_normal_form(const SparseIntMatrix& matrix) {
  SmithResult result;
  result.rows = matrix.rows();
  result.cols = matrix.cols();

  auto rows = matrix.all_rows();
  const std::size_t units = SmithKernel::eliminate_units(rows, matrix.cols());

  std::vector<std::size_t> live_cols;
  std::vector<std::size_t> col_index(matrix.cols(), matrix.cols());
  std::vector<const SparseIntMatrix::Row*> live_rows;
  for (const auto& row : rows) {
    if (row.empty()) continue;
    live_rows.push_back(&row);
    for (const auto& e : row)
      if (col_index[e.col] == matrix.cols()) {
        col_index[e.col] = live_cols.size();
        live_cols.push_back(e.col);
      }
  }
  std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
  for (std::size_t r = 0; r < live_rows.size(); ++r)
    for (const auto& e : *live_rows[r]) dense[r][col_index[e.col]] = e.value;

  result.diagonal.assign(units, BigInt(1));
  for (auto& d : SmithKernel::dense_smith(std::move(dense))) result.diagonal.push_back(std::move(d));
  std::sort(result.diagonal.begin(), result.diagonal.end());
  return result;
}

inline SmithResult smith_normal_form(const std::vector<std::vector<long>>& dense) {
  return smith_normal_form(SparseIntMatrix::from_dense(dense));
}

/// Free rank plus torsion coefficients d_1 | d_2 | ... (all >= 2).
struct AbelianGroupDesc {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  /// Number of even torsion coefficients.
  std::size_t even_torsion() const {
    return static_cast<std::size_t>(
        std::count_if(torsion.begin(), torsion.end(), [](const BigInt& d) { return (d & 1) == 0; }));
  }
  /// dim H_1 tensor Z/2.
  std::size_t mod2_betti() const { return free_rank + even_torsion(); }

  bool torsion_free() const noexcept { return torsion.empty(); }

  /// Multiplicity of each torsion order, ascending.
  std::vector<std::pair<BigInt, std::size_t>> torsion_counts() const {
    std::vector<std::pair<BigInt, std::size_t>> out;
    for (const auto& d : torsion) {
      if (!out.empty() && out.back().first == d)
        ++out.back().second;
      else
        out.emplace_back(d, 1);
    }
    return out;
  }

  /// e.g. "Z^28 + Z_8^15", "Z_4^4 + Z_8", or "0" for the trivial group.
  std::string to_string() const {
    std::ostringstream os;
    if (free_rank) os << 'Z';
    if (free_rank > 1) os << '^' << free_rank;
    for (const auto& [order, count] : torsion_counts()) {
      if (os.tellp() > 0) os << " + ";
      os << "Z_" << order;
      if (count > 1) os << '^' << count;
    }
    const auto s = os.str();
    return s.empty() ? "0" : s;
  }
  std::string torsion_string() const { return AbelianGroupDesc{0, torsion}.to_string(); }

  friend bool operator==(const AbelianGroupDesc&, const AbelianGroupDesc&) = default;
};

/// Z^cols / (row space).
inline AbelianGroupDesc cokernel(const SparseIntMatrix& relations) {
  const auto snf = smith_normal_form(relations);
  AbelianGroupDesc group;
  group.free_rank = relations.cols() - snf.rank();
  for (const auto& d : snf.diagonal)
    if (d > 1) group.torsion.push_back(d);
  return group;
}

}  // namespace mfb
