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

#ifndef QDSBCH_BCH_HPP
#define QDSBCH_BCH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdsbch/fields.hpp"
#include "qdsbch/linalg.hpp"

namespace qdsbch {

/// Degree of the narrow-sense BCH generator polynomial, counted as the total
/// size of the cyclotomic cosets mod 2^m - 1 that meet {1, ..., 2t}.
inline std::size_t bch_redundancy(int m, std::size_t t) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree) throw std::invalid_argument("bch_redundancy: m out of range");
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  if (t == 0 || 2 * t >= n) throw std::invalid_argument("bch_redundancy: need 1 <= t and 2t < 2^m - 1");
  std::vector<bool> seen(n, false);
  std::size_t r = 0;
  for (std::uint64_t j = 1; j <= 2 * t; ++j) {
    for (std::uint64_t c = j; !seen[c]; c = (2 * c) % n) {
      seen[c] = true;
      ++r;
    }
  }
  return r;
}

struct BchDecodeResult {
  BitVector message;
  /// Flipped positions in the (shortened) block, ascending.
  std::vector<std::size_t> corrected_positions;
};

/// Primitive narrow-sense binary BCH code of length 2^m - 1 and designed
/// distance 2t + 1, optionally shortened by its first `a` coordinates.
///
/// Bit j of a full-length codeword is the coefficient of x^j. The systematic
/// form puts message bits at positions 0..k-1 and parity at k..n-1, so a
/// shortened message occupies the first k - a positions of the shortened block.
class BchCode {
 public:
  [[nodiscard]] int m() const { return field_->m(); }
  [[nodiscard]] std::size_t t() const { return t_; }
  /// Parent length 2^m - 1.
  [[nodiscard]] std::size_t parent_length() const { return n_; }
  /// Parent dimension n - r.
  [[nodiscard]] std::size_t parent_dimension() const { return n_ - r_; }
  /// R(m, t): number of parity bits, unchanged by shortening.
  [[nodiscard]] std::size_t redundancy() const { return r_; }
  [[nodiscard]] std::size_t shorten_by() const { return a_; }
  [[nodiscard]] std::size_t length() const { return n_ - a_; }
  [[nodiscard]] std::size_t dimension() const { return n_ - r_ - a_; }
  [[nodiscard]] std::size_t designed_distance() const { return 2 * t_ + 1; }
  [[nodiscard]] const FieldPolynomial& generator_polynomial() const { return generator_; }
  [[nodiscard]] const FiniteField& field() const { return *field_; }
  [[nodiscard]] std::shared_ptr<const FiniteField> field_ptr() const { return field_; }

  /// "[n,k,d]" of the (shortened) code.
  [[nodiscard]] std::string parameters() const {
    return "[" + std::to_string(length()) + "," + std::to_string(dimension()) + "," +
           std::to_string(designed_distance()) + "]";
  }

  static BchCode construct(std::shared_ptr<const FiniteField> field, std::size_t t) {
    if (!field) throw std::invalid_argument("bch: null field");
    const std::size_t n = field->order();
    if (t < 1 || 2 * t >= n) {
      throw std::invalid_argument("bch: t=" + std::to_string(t) + " too large for length " + std::to_string(n) +
                                  " (need 1 <= t and 2t < 2^m - 1)");
    }
    std::set<std::uint32_t> coset_leaders;
    std::vector<FieldPolynomial> minimal_polys;
    for (std::uint32_t j = 1; j <= 2 * t; ++j) {
      const auto coset = cyclotomic_coset_of(field->m(), j);
      const std::uint32_t leader = *std::min_element(coset.begin(), coset.end());
      if (coset_leaders.insert(leader).second) minimal_polys.push_back(minimal_polynomial(*field, j));
    }
    BchCode code;
    code.field_ = std::move(field);
    code.t_ = t;
    code.n_ = n;
    code.generator_ = poly_lcm(minimal_polys);
    code.r_ = static_cast<std::size_t>(code.generator_.degree());
    return code;
  }

  [[nodiscard]] BchCode shortened(std::size_t a) const {
    if (a >= parent_dimension()) {
      throw std::invalid_argument("bch_shorten: shortening " + std::to_string(a) + " leaves no message bits (k=" +
                                  std::to_string(parent_dimension()) + ")");
    }
    BchCode out = *this;
    out.a_ = a;
    return out;
  }

  /// Systematic [I | P] generator matrix of the (shortened) code.
  [[nodiscard]] BinaryMatrix generator_matrix() const {
    const std::size_t k = dimension();
    BinaryMatrix g(k, length());
    // Full-code row j is x^j + x^(n-r) * (x^(j+r) mod g(x)).
    FieldPolynomial rem = FieldPolynomial::monomial(a_ + r_) % generator_;
    for (std::size_t i = 0; i < k; ++i) {
      g.set(i, i);
      for (std::size_t l = 0; l < r_; ++l) {
        if (rem.coefficient(l)) g.set(i, k + l);
      }
      rem = rem.shifted(1);
      if (rem.coefficient(r_)) rem += generator_;
    }
    return g;
  }

  /// msg . G: systematic, so the first k - a bits equal msg.
  [[nodiscard]] BitVector encode(const BitVector& msg) const {
    if (msg.size() != dimension()) throw std::invalid_argument("bch_encode: message length mismatch");
    FieldPolynomial shifted_msg;
    for (std::size_t i = msg.find_first(); i < msg.size(); i = msg.find_next(i + 1)) {
      shifted_msg.flip_coefficient(i + a_ + r_);
    }
    const FieldPolynomial parity = shifted_msg % generator_;
    BitVector out(length());
    for (std::size_t i = msg.find_first(); i < msg.size(); i = msg.find_next(i + 1)) out.set(i);
    for (std::size_t l = 0; l < r_; ++l) {
      if (parity.coefficient(l)) out.set(dimension() + l);
    }
    return out;
  }

  /// Syndromes S_j = w(alpha^j), j = 1..2t, of a full-length word given by
  /// its set positions.
  [[nodiscard]] std::vector<FiniteField::Element> syndromes(const std::vector<std::size_t>& positions) const {
    std::vector<FiniteField::Element> s(2 * t_, 0);
    for (std::size_t p : positions) {
      for (std::size_t j = 1; j <= 2 * t_; ++j) {
        s[j - 1] ^= field_->alpha_pow(static_cast<std::int64_t>(j * p));
      }
    }
    return s;
  }

  /// Bounded-distance decoding: zero-pad the shortened prefix, Berlekamp-Massey
  /// for the error locator, Chien search for its roots. Returns nullopt when
  /// more than t errors are detected.
  [[nodiscard]] std::optional<BchDecodeResult> decode(const BitVector& received) const {
    if (received.size() != length()) throw std::invalid_argument("bch_decode: received length mismatch");
    std::vector<std::size_t> positions;
    for (std::size_t i = received.find_first(); i < received.size(); i = received.find_next(i + 1)) {
      positions.push_back(i + a_);
    }
    const auto synd = syndromes(positions);
    BchDecodeResult out;
    const bool clean = std::all_of(synd.begin(), synd.end(), [](auto v) { return v == 0; });
    if (!clean) {
      const auto locator = berlekamp_massey(synd);
      const std::size_t degree = locator.size() - 1;
      if (degree > t_) return std::nullopt;
      // Chien search: an error at position p makes alpha^(-p) a root.
      std::vector<std::size_t> found;
      for (std::size_t p = 0; p < n_ && found.size() <= degree; ++p) {
        const auto x = field_->alpha_pow(-static_cast<std::int64_t>(p));
        FiniteField::Element acc = 0;
        for (std::size_t i = degree + 1; i-- > 0;) acc = field_->mul(acc, x) ^ locator[i];
        if (acc == 0) found.push_back(p);
      }
      if (found.size() != degree) return std::nullopt;
      for (std::size_t p : found) {
        if (p < a_) return std::nullopt;
        auto it = std::lower_bound(positions.begin(), positions.end(), p);
        if (it != positions.end() && *it == p) {
          positions.erase(it);
        } else {
          positions.insert(it, p);
        }
        out.corrected_positions.push_back(p - a_);
      }
      const auto residual = syndromes(positions);
      if (!std::all_of(residual.begin(), residual.end(), [](auto v) { return v == 0; })) return std::nullopt;
    }
    out.message = BitVector(dimension());
    for (std::size_t p : positions) {
      if (p >= a_ && p < a_ + dimension()) out.message.set(p - a_);
    }
    return out;
  }

 private:
  BchCode() = default;

  /// Error-locator polynomial, lowest degree first, padded to length L + 1.
  [[nodiscard]] std::vector<FiniteField::Element> berlekamp_massey(
      const std::vector<FiniteField::Element>& synd) const {
    using E = FiniteField::Element;
    const FiniteField& f = *field_;
    std::vector<E> c{1};
    std::vector<E> b{1};
    std::size_t len = 0;
    std::size_t gap = 1;
    E last = 1;
    for (std::size_t step = 0; step < synd.size(); ++step) {
      E d = synd[step];
      for (std::size_t i = 1; i <= len && i < c.size(); ++i) d ^= f.mul(c[i], synd[step - i]);
      if (d == 0) {
        ++gap;
        continue;
      }
      const E coef = f.div(d, last);
      std::vector<E> next = c;
      if (next.size() < b.size() + gap) next.resize(b.size() + gap, 0);
      for (std::size_t i = 0; i < b.size(); ++i) next[i + gap] ^= f.mul(coef, b[i]);
      if (2 * len <= step) {
        b = std::move(c);
        len = step + 1 - len;
        last = d;
        gap = 1;
      } else {
        ++gap;
      }
      c = std::move(next);
    }
    // deg C <= L always; a vanishing leading term surfaces as too few Chien roots.
    c.resize(len + 1, 0);
    return c;
  }

  std::shared_ptr<const FiniteField> field_;
  std::size_t t_ = 0;
  std::size_t n_ = 0;
  std::size_t r_ = 0;
  std::size_t a_ = 0;
  FieldPolynomial generator_;
};

inline BchCode bch_construct(int m, std::size_t t) { return BchCode::construct(std::make_shared<const FiniteField>(m), t); }

inline BchCode bch_shorten(const BchCode& code, std::size_t a) { return code.shortened(a); }

inline BinaryMatrix bch_generator_matrix(const BchCode& code) { return code.generator_matrix(); }

inline BitVector bch_encode(const BchCode& code, const BitVector& msg) { return code.encode(msg); }

inline std::optional<BchDecodeResult> bch_decode(const BchCode& code, const BitVector& received) {
  return code.decode(received);
}

/// How bch_select_m picks the extension degree.
enum class MSelection {
  /// Smallest m with ell <= 2^m - m*t - 1 (the R(m,t) <= m*t bound).
  kBound,
  /// Smallest m whose exact dimension 2^m - 1 - R(m,t) is at least ell.
  kExactRedundancy,
};

/// Smallest admissible extension degree, or nullopt if none up to 16 works.
inline std::optional<int> bch_select_degree(std::size_t ell, std::size_t t, MSelection rule = MSelection::kBound) {
  if (ell < 1 || t < 1) throw std::invalid_argument("bch_select_m: need ell >= 1 and t >= 1");
  for (int m = kMinFieldDegree; m <= kMaxFieldDegree; ++m) {
    const std::size_t n = (std::size_t{1} << m) - 1;
    if (2 * t >= n) continue;
    if (rule == MSelection::kBound && ell + static_cast<std::size_t>(m) * t > n) continue;
    if (rule == MSelection::kExactRedundancy && ell + bch_redundancy(m, t) > n) continue;
    return m;
  }
  return std::nullopt;
}

/// Code from bch_select_degree, shortened so its dimension is exactly ell.
inline BchCode bch_select_m(std::size_t ell, std::size_t t, MSelection rule = MSelection::kBound) {
  const auto m = bch_select_degree(ell, t, rule);
  if (!m) {
    throw std::invalid_argument("bch_select_m: no m <= 16 fits ell=" + std::to_string(ell) + ", t=" + std::to_string(t));
  }
  const BchCode full = bch_construct(*m, t);
  return full.shortened(full.parent_dimension() - ell);
}

}  // namespace qdsbch

#endif  // QDSBCH_BCH_HPP
