#pragma once

// Row-major binary matrices with GF(2) products, Kronecker product,
// semi-tensor product and a linear solver.

#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logzono/bitvec.hpp"
#include "logzono/errors.hpp"

namespace logzono {

class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("BitMatrix dimensions must be positive, got " + std::to_string(rows) +
                           "x" + std::to_string(cols));
    }
    rows_.assign(rows, BitVec(cols));
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static BitMatrix from_rows(std::vector<BitVec> rows) {
    if (rows.empty() || rows.front().empty()) throw DimensionError("BitMatrix needs at least one row and column");
    for (const BitVec& r : rows) {
      if (r.size() != rows.front().size()) throw DimensionError("ragged BitMatrix rows");
    }
    BitMatrix m(rows.size(), rows.front().size());
    m.rows_ = std::move(rows);
    return m;
  }

  /// Column matrix (n x 1) holding `v`.
  static BitMatrix column(const BitVec& v) {
    BitMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
  }

  /// Rows separated by ';', e.g. "10;01".
  static BitMatrix from_string(std::string_view text) {
    std::vector<BitVec> rows;
    std::size_t start = 0;
    while (true) {
      const std::size_t end = text.find(';', start);
      rows.push_back(BitVec::from_string(text.substr(start, end - start)));
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
    try {
      return from_rows(std::move(rows));
    } catch (const DimensionError& e) {
      throw FormatError(std::string("bad matrix \"") + std::string(text) + "\": " + e.what());
    }
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return rows_.front().size(); }

  bool get(std::size_t r, std::size_t c) const noexcept { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) noexcept { rows_[r].set(c, v); }
  const BitVec& row(std::size_t r) const noexcept { return rows_[r]; }
  BitVec& row(std::size_t r) noexcept { return rows_[r]; }

  BitVec col(std::size_t c) const {
    BitVec v(rows());
    for (std::size_t r = 0; r < rows(); ++r) v.set(r, get(r, c));
    return v;
  }

  bool any() const noexcept {
    for (const BitVec& r : rows_) {
      if (r.any()) return true;
    }
    return false;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r != 0) s += ';';
      s += rows_[r].to_string();
    }
    return s;
  }

  BitMatrix& operator^=(const BitMatrix& other) {
    require_same_shape(other, "xor");
    for (std::size_t r = 0; r < rows(); ++r) rows_[r] ^= other.rows_[r];
    return *this;
  }
  BitMatrix& operator&=(const BitMatrix& other) {
    require_same_shape(other, "and");
    for (std::size_t r = 0; r < rows(); ++r) rows_[r] &= other.rows_[r];
    return *this;
  }
  friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }
  friend BitMatrix operator&(BitMatrix a, const BitMatrix& b) { return a &= b; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  /// Shape first, then row-by-row lexicographic.
  friend std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b) noexcept {
    if (auto c = a.rows() <=> b.rows(); c != 0) return c;
    if (auto c = a.cols() <=> b.cols(); c != 0) return c;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (auto c = a.rows_[r] <=> b.rows_[r]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void require_same_shape(const BitMatrix& other, const char* op) const {
    if (rows() != other.rows() || cols() != other.cols()) {
      throw DimensionError(std::string(op) + ": shape " + std::to_string(rows()) + "x" +
                           std::to_string(cols()) + " vs " + std::to_string(other.rows()) + "x" +
                           std::to_string(other.cols()));
    }
  }

  std::vector<BitVec> rows_;
};

/// Product over GF(2): entry (i,j) is the XOR over k of A[i,k] & B[k,j].
inline BitMatrix gf2_matmul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("gf2_matmul: inner dimensions " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  }
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.get(i, k)) out.row(i) ^= b.row(k);
    }
  }
  return out;
}

/// A·x over GF(2).
inline BitVec gf2_apply(const BitMatrix& a, const BitVec& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("gf2_apply: matrix has " + std::to_string(a.cols()) + " columns, vector " +
                         std::to_string(x.size()));
  }
  BitVec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out.set(i, (a.row(i) & x).count() % 2 == 1);
  return out;
}

inline BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.get(i, j)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p) {
        for (std::size_t q = 0; q < b.cols(); ++q) {
          if (b.get(p, q)) out.set(i * b.rows() + p, j * b.cols() + q, true);
        }
      }
    }
  }
  return out;
}

/// Semi-tensor product (M ⊗ I_{s/n})(N ⊗ I_{s/p}) with s = lcm(n, p),
/// where n = M.cols and p = N.rows. Products accumulate over GF(2).
inline BitMatrix stp(const BitMatrix& m, const BitMatrix& n) {
  const std::size_t s = std::lcm(m.cols(), n.rows());
  const std::size_t left = s / m.cols();
  const std::size_t right = s / n.rows();
  if (left == 1 && right == 1) return gf2_matmul(m, n);
  return gf2_matmul(left == 1 ? m : kron(m, BitMatrix::identity(left)),
                    right == 1 ? n : kron(n, BitMatrix::identity(right)));
}

/// Solves A·β = b over GF(2). Pivots are taken at the lowest column index
/// first and free variables are set to 0, so the witness is deterministic.
inline std::optional<BitVec> gf2_solve(const BitMatrix& a, const BitVec& b) {
  if (a.rows() != b.size()) {
    throw DimensionError("gf2_solve: matrix has " + std::to_string(a.rows()) + " rows, rhs " +
                         std::to_string(b.size()));
  }
  const std::size_t n_rows = a.rows();
  const std::size_t n_cols = a.cols();
  std::vector<BitVec> rows;
  rows.reserve(n_rows);
  std::vector<bool> rhs(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    rows.push_back(a.row(r));
    rhs[r] = b[r];
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n_cols && rank < n_rows; ++c) {
    std::size_t p = rank;
    while (p < n_rows && !rows[p].get(c)) ++p;
    if (p == n_rows) continue;
    std::swap(rows[p], rows[rank]);
    std::swap(rhs[p], rhs[rank]);
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (r != rank && rows[r].get(c)) {
        rows[r] ^= rows[rank];
        rhs[r] = rhs[r] != rhs[rank];
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < n_rows; ++r) {
    if (rhs[r]) return std::nullopt;
  }
  BitVec beta(n_cols);
  for (std::size_t r = 0; r < rank; ++r) beta.set(pivot_col[r], rhs[r]);
  return beta;
}

/// Rank over GF(2) of a list of equal-length vectors.
inline std::size_t gf2_rank(std::vector<BitVec> vs) {
  std::size_t rank = 0;
  if (vs.empty()) return 0;
  const std::size_t n = vs.front().size();
  for (std::size_t c = 0; c < n && rank < vs.size(); ++c) {
    std::size_t p = rank;
    while (p < vs.size() && !vs[p].get(c)) ++p;
    if (p == vs.size()) continue;
    std::swap(vs[p], vs[rank]);
    for (std::size_t r = rank + 1; r < vs.size(); ++r) {
      if (vs[r].get(c)) vs[r] ^= vs[rank];
    }
    ++rank;
  }
  return rank;
}

}  // namespace logzono
