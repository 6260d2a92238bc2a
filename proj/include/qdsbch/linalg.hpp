// Copyright 2026 The qdsbch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDSBCH_LINALG_HPP
#define QDSBCH_LINALG_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdsbch {

/// Fixed-length vector over GF(2), packed into 64-bit words.
///
/// Bits past `size()` in the last word are always zero, so word-level
/// comparisons, hashing and popcounts need no masking.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

  /// Parses a string of '0'/'1' characters, index 0 first.
  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("bit string may only contain '0' and '1'");
      }
    }
    return v;
  }

  /// Bits are taken from the low `size` bits of `mask`, bit i -> index i.
  static BitVector from_mask(std::uint64_t mask, std::size_t size) {
    if (size > kWordBits) throw std::invalid_argument("mask wider than one word");
    BitVector v(size);
    if (size > 0) v.words_[0] = size == kWordBits ? mask : (mask & ((Word{1} << size) - 1));
    return v;
  }

  static BitVector unit(std::size_t size, std::size_t index) {
    BitVector v(size);
    v.set(index);
    return v;
  }

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] bool empty() const { return size_ == 0; }

  [[nodiscard]] bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  [[nodiscard]] bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool value = true) {
    const Word bit = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= bit;
    } else {
      words_[i / kWordBits] &= ~bit;
    }
  }
  void reset(std::size_t i) { set(i, false); }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  [[nodiscard]] std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  [[nodiscard]] bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
  }
  [[nodiscard]] bool none() const { return !any(); }

  /// Index of the lowest set bit at or after `from`, or size() if none.
  [[nodiscard]] std::size_t find_next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w != 0) return std::min(size_, wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      if (++wi >= words_.size()) return size_;
      w = words_[wi];
    }
  }
  [[nodiscard]] std::size_t find_first() const { return find_next(0); }

  /// Indices of all set bits, ascending.
  [[nodiscard]] std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = find_first(); i < size_; i = find_next(i + 1)) out.push_back(i);
    return out;
  }

  BitVector& operator^=(const BitVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitVector& operator&=(const BitVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVector& operator|=(const BitVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

  /// Inner product over GF(2).
  [[nodiscard]] bool dot(const BitVector& o) const {
    check_same_size(o);
    Word acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
    return (std::popcount(acc) & 1) != 0;
  }

  /// Copy of bits [begin, begin + length).
  [[nodiscard]] BitVector slice(std::size_t begin, std::size_t length) const {
    if (begin + length > size_) throw std::out_of_range("slice exceeds vector");
    BitVector out(length);
    for (std::size_t i = 0; i < length; ++i) {
      if (get(begin + i)) out.set(i);
    }
    return out;
  }

  /// `this` followed by `tail`.
  [[nodiscard]] BitVector concat(const BitVector& tail) const {
    BitVector out(size_ + tail.size_);
    std::copy(words_.begin(), words_.end(), out.words_.begin());
    for (std::size_t i = tail.find_first(); i < tail.size_; i = tail.find_next(i + 1)) out.set(size_ + i);
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = find_first(); i < size_; i = find_next(i + 1)) s[i] = '1';
    return s;
  }

  /// Lexicographic order of the '0'/'1' strings (index 0 most significant).
  [[nodiscard]] bool lex_less(const BitVector& o) const {
    check_same_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] != o.words_[i]) {
        const Word diff = words_[i] ^ o.words_[i];
        const auto first = static_cast<unsigned>(std::countr_zero(diff));
        return ((o.words_[i] >> first) & 1U) != 0;
      }
    }
    return false;
  }

  [[nodiscard]] std::span<const Word> words() const { return words_; }
  [[nodiscard]] std::span<Word> words_mut() { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  [[nodiscard]] std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (Word w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  static std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }
  void check_same_size(const BitVector& o) const {
    if (o.size_ != size_) throw std::invalid_argument("bit vector length mismatch");
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const { return v.hash(); }
};

inline std::ostream& operator<<(std::ostream& os, const BitVector& v) { return os << v.to_string(); }

/// Dense matrix over GF(2), one packed BitVector per row.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  /// All rows must have the same length; `cols` disambiguates the zero-row case.
  static BinaryMatrix from_rows(std::vector<BitVector> rows, std::optional<std::size_t> cols = std::nullopt) {
    BinaryMatrix m;
    m.cols_ = cols ? *cols : (rows.empty() ? 0 : rows.front().size());
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    }
    m.rows_ = std::move(rows);
    return m;
  }

  static BinaryMatrix from_strings(const std::vector<std::string>& rows) {
    std::vector<BitVector> bits;
    bits.reserve(rows.size());
    for (const auto& r : rows) bits.push_back(BitVector::from_string(r));
    return from_rows(std::move(bits));
  }

  static BinaryMatrix identity(std::size_t n) {
    BinaryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  [[nodiscard]] bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

  [[nodiscard]] const BitVector& row(std::size_t r) const { return rows_[r]; }
  [[nodiscard]] BitVector& row_mut(std::size_t r) { return rows_[r]; }
  [[nodiscard]] const std::vector<BitVector>& row_vectors() const { return rows_; }

  void append_row(BitVector r) {
    if (r.size() != cols_) throw std::invalid_argument("row length does not match matrix width");
    rows_.push_back(std::move(r));
  }

  [[nodiscard]] BinaryMatrix transpose() const {
    BinaryMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c = rows_[r].find_first(); c < cols_; c = rows_[r].find_next(c + 1)) t.set(c, r);
    }
    return t;
  }

  /// Row vector times matrix: v (length rows()) -> length cols().
  [[nodiscard]] BitVector left_multiply(const BitVector& v) const {
    if (v.size() != rows()) throw std::invalid_argument("vector length does not match matrix rows");
    BitVector out(cols_);
    for (std::size_t r = v.find_first(); r < v.size(); r = v.find_next(r + 1)) out ^= rows_[r];
    return out;
  }

  /// Matrix times column vector: v (length cols()) -> length rows().
  [[nodiscard]] BitVector multiply(const BitVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length does not match matrix columns");
    BitVector out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      if (rows_[r].dot(v)) out.set(r);
    }
    return out;
  }

  BinaryMatrix& operator^=(const BinaryMatrix& o) {
    if (o.rows() != rows() || o.cols_ != cols_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t r = 0; r < rows(); ++r) rows_[r] ^= o.rows_[r];
    return *this;
  }
  friend BinaryMatrix operator^(BinaryMatrix a, const BinaryMatrix& b) { return a ^= b; }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Product over GF(2). Each output row is the XOR of the rows of `b`
/// selected by the corresponding row of `a`.
inline BinaryMatrix mat_mul(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: a.cols must equal b.rows");
  BinaryMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.row_mut(r) = b.left_multiply(a.row(r));
  return out;
}

struct RowReduction {
  BinaryMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form. Columns are scanned left to right; the pivot
/// is the first row at or below the current pivot row with a 1 there.
inline RowReduction row_reduce(const BinaryMatrix& m) {
  RowReduction out{m, 0, {}};
  BinaryMatrix& a = out.reduced;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
    std::size_t found = pivot_row;
    while (found < a.rows() && !a.get(found, c)) ++found;
    if (found == a.rows()) continue;
    if (found != pivot_row) std::swap(a.row_mut(found), a.row_mut(pivot_row));
    const BitVector pivot = a.row(pivot_row);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r != pivot_row && a.get(r, c)) a.row_mut(r) ^= pivot;
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.rank = pivot_row;
  return out;
}

inline std::size_t rank(const BinaryMatrix& m) { return row_reduce(m).rank; }

/// Incremental span membership against a fixed set of rows.
class RowSpace {
 public:
  explicit RowSpace(const BinaryMatrix& m) : cols_(m.cols()) {
    auto rr = row_reduce(m);
    pivots_ = std::move(rr.pivot_cols);
    for (std::size_t i = 0; i < rr.rank; ++i) basis_.push_back(rr.reduced.row(i));
  }

  [[nodiscard]] std::size_t dimension() const { return basis_.size(); }

  [[nodiscard]] bool contains(const BitVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("in_row_space: vector length does not match matrix columns");
    BitVector rem = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (rem.get(pivots_[i])) rem ^= basis_[i];
    }
    return rem.none();
  }

 private:
  std::size_t cols_;
  std::vector<std::size_t> pivots_;
  std::vector<BitVector> basis_;
};

inline bool in_row_space(const BinaryMatrix& m, const BitVector& v) { return RowSpace(m).contains(v); }

/// Text format: "rows cols" on the first line, then one 0/1 string per row.
inline void write_matrix_text(std::ostream& os, const BinaryMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) os << m.row(r).to_string() << '\n';
}

inline std::string matrix_to_text(const BinaryMatrix& m) {
  std::ostringstream os;
  write_matrix_text(os, m);
  return os.str();
}

inline BinaryMatrix read_matrix_text(std::istream& is) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(is >> rows >> cols)) throw std::invalid_argument("matrix text: expected 'rows cols' header");
  std::vector<BitVector> data;
  data.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string line;
    if (!(is >> line)) throw std::invalid_argument("matrix text: missing row " + std::to_string(r));
    if (line.size() != cols) throw std::invalid_argument("matrix text: ragged row " + std::to_string(r));
    data.push_back(BitVector::from_string(line));
  }
  std::string extra;
  if (is >> extra) throw std::invalid_argument("matrix text: trailing data after last row");
  return BinaryMatrix::from_rows(std::move(data), cols);
}

inline BinaryMatrix matrix_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_matrix_text(is);
}

}  // namespace qdsbch

#endif  // QDSBCH_LINALG_HPP
