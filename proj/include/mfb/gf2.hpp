#pragma once

// Bit-packed vectors and matrices over Z/2.

#include <bit>
#include <cstdint>
#include <vector>

#include "mfb/error.hpp"

namespace mfb::gf2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value)
      words_[i / 64] |= mask;
    else
      words_[i / 64] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  BitVector& operator^=(const BitVector& other) {
    if (other.size_ != size_) throw Error(ErrorKind::DimensionMismatch, "BitVector xor of different sizes");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  /// Index of the lowest set bit, or size() when zero.
  std::size_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
  }
  /// Parity of the bitwise AND with `other`.
  bool dot(const BitVector& other) const {
    if (other.size_ != size_) throw Error(ErrorKind::DimensionMismatch, "BitVector dot of different sizes");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Row-major. A linear map V -> W is stored with one row per coordinate of W,
/// so `apply` is the matrix-vector product.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }
  void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) t.set(c, r);
    return t;
  }

  BitVector apply(const BitVector& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "BitMatrix applied to wrong-length vector");
    BitVector out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out.set(r, rows_[r].dot(v));
    return out;
  }

  /// this * other
  BitMatrix multiply(const BitMatrix& other) const {
    if (other.rows() != cols_) throw Error(ErrorKind::DimensionMismatch, "BitMatrix product shape mismatch");
    BitMatrix out(rows(), other.cols());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t k = 0; k < cols_; ++k)
        if (get(r, k)) out.rows_[r] ^= other.rows_[k];
    return out;
  }

  bool is_zero() const {
    for (const auto& r : rows_)
      if (r.any()) return false;
    return true;
  }

  std::size_t rank() const {
    std::vector<BitVector> work = rows_;
    std::size_t rank = 0;
    std::vector<long> pivot_row(cols_, -1);  // basis index whose lowest bit is col
    std::vector<BitVector> basis;
    for (auto& row : work) {
      while (row.any()) {
        const std::size_t lead = row.lowest();
        if (pivot_row[lead] < 0) {
          pivot_row[lead] = static_cast<long>(basis.size());
          basis.push_back(row);
          ++rank;
          break;
        }
        row ^= basis[static_cast<std::size_t>(pivot_row[lead])];
      }
    }
    return rank;
  }

 private:
  std::size_t cols_;
  std::vector<BitVector> rows_;
};

}  // namespace mfb::gf2
