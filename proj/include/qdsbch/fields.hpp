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

#ifndef QDSBCH_FIELDS_HPP
#define QDSBCH_FIELDS_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdsbch {

/// Polynomial over GF(2). Bit i of the packed words is the coefficient of
/// x^i; trailing zero words are trimmed so equal polynomials compare equal.
class FieldPolynomial {
 public:
  using Word = std::uint64_t;

  FieldPolynomial() = default;

  static FieldPolynomial from_mask(std::uint64_t mask) {
    FieldPolynomial p;
    p.words_.push_back(mask);
    p.trim();
    return p;
  }

  static FieldPolynomial monomial(std::size_t degree) {
    FieldPolynomial p;
    p.words_.assign(degree / 64 + 1, 0);
    p.words_.back() = Word{1} << (degree % 64);
    return p;
  }

  /// Coefficients from a list of exponents with nonzero coefficient.
  static FieldPolynomial from_exponents(std::initializer_list<std::size_t> exps) {
    FieldPolynomial p;
    for (std::size_t e : exps) p.flip_coefficient(e);
    return p;
  }

  /// Accepts "0x25", "25" (hex), case-insensitive.
  static FieldPolynomial from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty()) throw std::invalid_argument("empty hex polynomial");
    FieldPolynomial p;
    std::size_t bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
      const char c = *it;
      unsigned v = 0;
      if (c >= '0' && c <= '9') {
        v = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        v = static_cast<unsigned>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        v = static_cast<unsigned>(c - 'A' + 10);
      } else {
        throw std::invalid_argument("invalid hex digit in polynomial");
      }
      for (unsigned b = 0; b < 4; ++b) {
        if ((v >> b) & 1U) p.flip_coefficient(bit + b);
      }
    }
    return p;
  }

  [[nodiscard]] std::string to_hex() const {
    if (is_zero()) return "0x0";
    static constexpr std::string_view kDigits = "0123456789abcdef";
    std::string out;
    const auto nibbles = static_cast<std::size_t>(degree()) / 4 + 1;
    for (std::size_t i = nibbles; i-- > 0;) {
      unsigned v = 0;
      for (unsigned b = 0; b < 4; ++b) v |= static_cast<unsigned>(coefficient(4 * i + b)) << b;
      out.push_back(kDigits[v]);
    }
    return "0x" + out;
  }

  [[nodiscard]] bool is_zero() const { return words_.empty(); }

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const {
    if (words_.empty()) return -1;
    return static_cast<int>(64 * (words_.size() - 1) + 63 - static_cast<std::size_t>(std::countl_zero(words_.back())));
  }

  [[nodiscard]] bool coefficient(std::size_t i) const {
    return i / 64 < words_.size() && ((words_[i / 64] >> (i % 64)) & 1U);
  }

  void flip_coefficient(std::size_t i) {
    if (i / 64 >= words_.size()) words_.resize(i / 64 + 1, 0);
    words_[i / 64] ^= Word{1} << (i % 64);
    trim();
  }

  /// Low word of the coefficient mask; valid when degree() < 64.
  [[nodiscard]] std::uint64_t mask() const {
    if (degree() >= 64) throw std::domain_error("polynomial does not fit in 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  [[nodiscard]] std::size_t weight() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  [[nodiscard]] std::span<const Word> words() const { return words_; }

  FieldPolynomial& operator+=(const FieldPolynomial& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
    trim();
    return *this;
  }
  friend FieldPolynomial operator+(FieldPolynomial a, const FieldPolynomial& b) { return a += b; }

  [[nodiscard]] FieldPolynomial shifted(std::size_t by) const {
    if (is_zero()) return {};
    FieldPolynomial out;
    const std::size_t ws = by / 64;
    const unsigned bs = by % 64;
    out.words_.assign(words_.size() + ws + 1, 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      out.words_[i + ws] |= words_[i] << bs;
      if (bs != 0) out.words_[i + ws + 1] |= words_[i] >> (64 - bs);
    }
    out.trim();
    return out;
  }

  friend FieldPolynomial operator*(const FieldPolynomial& a, const FieldPolynomial& b) {
    FieldPolynomial out;
    if (a.is_zero() || b.is_zero()) return out;
    const auto db = static_cast<std::size_t>(b.degree());
    for (std::size_t i = 0; i <= db; ++i) {
      if (b.coefficient(i)) out += a.shifted(i);
    }
    return out;
  }

  struct DivMod;
  [[nodiscard]] DivMod divmod(const FieldPolynomial& divisor) const;

  [[nodiscard]] FieldPolynomial operator%(const FieldPolynomial& divisor) const;
  [[nodiscard]] FieldPolynomial operator/(const FieldPolynomial& divisor) const;

  friend bool operator==(const FieldPolynomial&, const FieldPolynomial&) = default;

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<Word> words_;
};

struct FieldPolynomial::DivMod {
  FieldPolynomial quotient;
  FieldPolynomial remainder;
};

inline FieldPolynomial::DivMod FieldPolynomial::divmod(const FieldPolynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  DivMod out{{}, *this};
  const int dd = divisor.degree();
  while (out.remainder.degree() >= dd) {
    const auto shift = static_cast<std::size_t>(out.remainder.degree() - dd);
    out.quotient.flip_coefficient(shift);
    out.remainder += divisor.shifted(shift);
  }
  return out;
}

inline FieldPolynomial FieldPolynomial::operator%(const FieldPolynomial& divisor) const {
  return divmod(divisor).remainder;
}

inline FieldPolynomial FieldPolynomial::operator/(const FieldPolynomial& divisor) const {
  return divmod(divisor).quotient;
}

inline FieldPolynomial poly_gcd(FieldPolynomial a, FieldPolynomial b) {
  while (!b.is_zero()) {
    FieldPolynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Least common multiple over GF(2). Every nonzero polynomial over GF(2)
/// is monic, so the result is monic too.
inline FieldPolynomial poly_lcm(std::span<const FieldPolynomial> ps) {
  if (ps.empty()) return FieldPolynomial::from_mask(1);
  FieldPolynomial acc = FieldPolynomial::from_mask(1);
  for (const auto& p : ps) {
    if (p.is_zero()) throw std::invalid_argument("poly_lcm: zero polynomial");
    acc = acc * (p / poly_gcd(acc, p));
  }
  return acc;
}

inline FieldPolynomial poly_lcm(std::initializer_list<FieldPolynomial> ps) {
  return poly_lcm(std::span<const FieldPolynomial>(ps.begin(), ps.size()));
}

/// Default primitive polynomials for m = 2..16, as coefficient masks.
inline constexpr std::array<std::uint32_t, 17> kDefaultPrimitivePolynomials = {
    0,       0,       0x7,     0xB,     0x13,    0x25,    0x43,    0x89,    0x11D,
    0x211,   0x409,   0x805,   0x1053,  0x201B,  0x4443,  0x8003,  0x1100B,
};

inline constexpr int kMinFieldDegree = 2;
inline constexpr int kMaxFieldDegree = 16;

/// GF(2^m) in polynomial basis over a primitive polynomial. Elements are
/// their coefficient masks; multiplication goes through log/antilog tables.
class FiniteField {
 public:
  using Element = std::uint32_t;

  explicit FiniteField(int m) : FiniteField(m, FieldPolynomial::from_mask(check_degree(m) ? kDefaultPrimitivePolynomials[static_cast<std::size_t>(m)] : 0)) {}

  FiniteField(int m, FieldPolynomial primitive) : m_(m), primitive_(std::move(primitive)) {
    check_degree(m);
    if (primitive_.degree() != m) throw std::invalid_argument("primitive polynomial must have degree m");
    const auto order = static_cast<std::uint32_t>(size() - 1);
    const auto poly = static_cast<std::uint32_t>(primitive_.mask());
    exp_.assign(2 * static_cast<std::size_t>(order), 0);
    log_.assign(size(), 0);
    Element x = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
      if (i > 0 && x == 1) throw std::invalid_argument("polynomial is not primitive");
      exp_[i] = x;
      exp_[i + order] = x;
      log_[x] = i;
      x <<= 1;
      if (x & (Element{1} << m)) x ^= poly;
    }
    if (x != 1) throw std::invalid_argument("polynomial is not primitive");
  }

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] std::size_t size() const { return std::size_t{1} << m_; }
  /// Order of the multiplicative group, 2^m - 1.
  [[nodiscard]] std::uint32_t order() const { return static_cast<std::uint32_t>(size() - 1); }
  [[nodiscard]] const FieldPolynomial& primitive_polynomial() const { return primitive_; }

  /// alpha^e for any integer exponent (reduced mod 2^m - 1).
  [[nodiscard]] Element alpha_pow(std::int64_t e) const {
    const auto n = static_cast<std::int64_t>(order());
    e %= n;
    if (e < 0) e += n;
    return exp_[static_cast<std::size_t>(e)];
  }

  /// Discrete log base alpha; x must be nonzero.
  [[nodiscard]] std::uint32_t log(Element x) const {
    if (x == 0 || x >= size()) throw std::domain_error("log of zero or out-of-range element");
    return log_[x];
  }

  [[nodiscard]] static Element add(Element a, Element b) { return a ^ b; }

  [[nodiscard]] Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  [[nodiscard]] Element inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(order() - log_[a]) % order()];
  }

  [[nodiscard]] Element div(Element a, Element b) const { return mul(a, inv(b)); }

  [[nodiscard]] Element pow(Element a, std::int64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return alpha_pow(static_cast<std::int64_t>(log_[a]) * (e % static_cast<std::int64_t>(order())));
  }

  /// p(x) evaluated at a field element (GF(2) coefficients embed as 0/1).
  [[nodiscard]] Element evaluate(const FieldPolynomial& p, Element x) const {
    Element acc = 0;
    for (int i = p.degree(); i >= 0; --i) {
      acc = mul(acc, x) ^ static_cast<Element>(p.coefficient(static_cast<std::size_t>(i)));
    }
    return acc;
  }

 private:
  static bool check_degree(int m) {
    if (m < kMinFieldDegree || m > kMaxFieldDegree) {
      throw std::invalid_argument("field degree m must be in [2, 16], got " + std::to_string(m));
    }
    return true;
  }

  int m_;
  FieldPolynomial primitive_;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
};

inline FiniteField field_new(int m) { return FiniteField(m); }

/// Cyclotomic cosets {i, 2i, 4i, ...} mod 2^m - 1, ordered by smallest
/// representative. Each coset lists its elements in doubling order.
inline std::vector<std::vector<std::uint32_t>> cyclotomic_cosets(int m) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree) throw std::invalid_argument("cyclotomic_cosets: m out of range");
  const std::uint32_t n = (std::uint32_t{1} << m) - 1;
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::uint32_t>> cosets;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<std::uint32_t> coset;
    std::uint32_t c = i;
    while (!seen[c]) {
      seen[c] = true;
      coset.push_back(c);
      c = static_cast<std::uint32_t>((2ULL * c) % n);
    }
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

/// The coset containing `exponent`, in doubling order starting at it.
inline std::vector<std::uint32_t> cyclotomic_coset_of(int m, std::uint32_t exponent) {
  const std::uint32_t n = (std::uint32_t{1} << m) - 1;
  std::vector<std::uint32_t> coset;
  std::uint32_t c = exponent % n;
  do {
    coset.push_back(c);
    c = static_cast<std::uint32_t>((2ULL * c) % n);
  } while (c != exponent % n);
  return coset;
}

/// Minimal polynomial of alpha^exponent: the product of (x - alpha^c) over
/// the exponent's cyclotomic coset.
inline FieldPolynomial minimal_polynomial(const FiniteField& f, std::uint32_t exponent) {
  if (exponent >= f.order()) throw std::invalid_argument("minimal_polynomial: exponent out of range");
  std::vector<FiniteField::Element> coeffs{1};
  for (std::uint32_t c : cyclotomic_coset_of(f.m(), exponent)) {
    const auto root = f.alpha_pow(c);
    std::vector<FiniteField::Element> next(coeffs.size() + 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] ^= coeffs[i];
      next[i] ^= f.mul(coeffs[i], root);
    }
    coeffs = std::move(next);
  }
  FieldPolynomial p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] > 1) throw std::logic_error("minimal polynomial has coefficients outside GF(2)");
    if (coeffs[i] == 1) p.flip_coefficient(i);
  }
  return p;
}

/// Element of GF(4) as a symplectic bit pair: 0=(0,0), 1=(1,0), w=(0,1), w^2=(1,1).
struct Gf4 {
  bool x = false;
  bool z = false;

  static constexpr Gf4 zero() { return {false, false}; }
  static constexpr Gf4 one() { return {true, false}; }
  static constexpr Gf4 omega() { return {false, true}; }
  static constexpr Gf4 omega_bar() { return {true, true}; }

  /// Frobenius conjugation a -> a^2: swaps w and w^2.
  [[nodiscard]] constexpr Gf4 conj() const { return {x != z, z}; }

  friend constexpr Gf4 operator+(Gf4 a, Gf4 b) { return {a.x != b.x, a.z != b.z}; }

  friend constexpr Gf4 operator*(Gf4 a, Gf4 b) {
    // 1 = w^0, w = w^1, w^2 = w^2
    constexpr auto log = [](Gf4 v) { return v.z ? (v.x ? 2 : 1) : 0; };
    if (a == zero() || b == zero()) return zero();
    switch ((log(a) + log(b)) % 3) {
      case 0: return one();
      case 1: return omega();
      default: return omega_bar();
    }
  }

  friend constexpr bool operator==(Gf4, Gf4) = default;
};

/// Sum over positions of x_i * conj(y_i) + conj(x_i) * y_i, evaluated in
/// GF(4). The result is always 0 or 1; 1 means the Paulis anticommute.
inline bool gf4_trace_inner_product(std::span<const Gf4> a, std::span<const Gf4> b) {
  if (a.size() != b.size()) throw std::invalid_argument("trace inner product: length mismatch");
  Gf4 acc = Gf4::zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = acc + (a[i] * b[i].conj()) + (a[i].conj() * b[i]);
  if (acc.z) throw std::logic_error("trace inner product left GF(2)");
  return acc.x;
}

}  // namespace qdsbch

#endif  // QDSBCH_FIELDS_HPP
