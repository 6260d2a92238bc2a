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

#ifndef QDSBCH_STABILIZER_HPP
#define QDSBCH_STABILIZER_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdsbch/counting.hpp"
#include "qdsbch/fields.hpp"
#include "qdsbch/linalg.hpp"

namespace qdsbch {

/// n-qubit Pauli operator with the global phase dropped. Qubit i carries
/// the bit pair (x_i, z_i): I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t n) : x_(n), z_(n) {}
  PauliOperator(BitVector x, BitVector z) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) throw std::invalid_argument("Pauli x and z parts differ in length");
  }

  static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

  static PauliOperator parse(std::string_view s) {
    PauliOperator p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      switch (s[i]) {
        case 'I': break;
        case 'X': p.x_.set(i); break;
        case 'Z': p.z_.set(i); break;
        case 'Y': p.x_.set(i); p.z_.set(i); break;
        default:
          throw std::invalid_argument(std::string("invalid Pauli character '") + s[i] + "'");
      }
    }
    return p;
  }

  /// Inverse of symplectic_row(): first n bits are x, last n are z.
  static PauliOperator from_symplectic(const BitVector& row) {
    if (row.size() % 2 != 0) throw std::invalid_argument("symplectic row must have even length");
    const std::size_t n = row.size() / 2;
    return {row.slice(0, n), row.slice(n, n)};
  }

  [[nodiscard]] std::size_t num_qubits() const { return x_.size(); }
  [[nodiscard]] const BitVector& x_bits() const { return x_; }
  [[nodiscard]] const BitVector& z_bits() const { return z_; }

  /// 0=I, 1=X, 2=Z, 3=Y.
  void set_letter(std::size_t qubit, unsigned letter) {
    x_.set(qubit, (letter & 1U) != 0);
    z_.set(qubit, (letter & 2U) != 0);
  }

  [[nodiscard]] char letter(std::size_t qubit) const {
    static constexpr char kLetters[] = {'I', 'X', 'Z', 'Y'};
    return kLetters[static_cast<unsigned>(x_.get(qubit)) | (static_cast<unsigned>(z_.get(qubit)) << 1)];
  }

  [[nodiscard]] std::size_t weight() const { return (x_ | z_).count(); }
  [[nodiscard]] bool is_identity() const { return x_.none() && z_.none(); }

  /// Symplectic inner product x.z' + z.x' over GF(2); true iff anticommuting.
  [[nodiscard]] bool anticommutes(const PauliOperator& o) const {
    if (o.num_qubits() != num_qubits()) throw std::invalid_argument("Pauli size mismatch");
    return x_.dot(o.z_) != z_.dot(o.x_);
  }
  [[nodiscard]] bool commutes(const PauliOperator& o) const { return !anticommutes(o); }

  /// Product up to phase.
  PauliOperator& operator*=(const PauliOperator& o) {
    if (o.num_qubits() != num_qubits()) throw std::invalid_argument("Pauli size mismatch");
    x_ ^= o.x_;
    z_ ^= o.z_;
    return *this;
  }
  friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) { return a *= b; }

  [[nodiscard]] BitVector symplectic_row() const { return x_.concat(z_); }

  /// The GF(4) image tau(P), one element per qubit.
  [[nodiscard]] std::vector<Gf4> to_gf4() const {
    std::vector<Gf4> out(num_qubits());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {x_.get(i), z_.get(i)};
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s(num_qubits(), 'I');
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = letter(i);
    return s;
  }

  /// Lexicographic on (x bits, z bits), qubit 0 most significant.
  [[nodiscard]] bool lex_less(const PauliOperator& o) const {
    if (x_ != o.x_) return x_.lex_less(o.x_);
    return z_.lex_less(o.z_);
  }

  friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

 private:
  BitVector x_;
  BitVector z_;
};

inline PauliOperator pauli_parse(std::string_view s) { return PauliOperator::parse(s); }

inline std::ostream& operator<<(std::ostream& os, const PauliOperator& p) { return os << p.to_string(); }

/// Visits every n-qubit Pauli of weight exactly w: supports in lexicographic
/// order, letters X, Z, Y cycling fastest on the last support qubit.
template <typename Fn>
void for_each_pauli_of_weight(std::size_t n, std::size_t w, Fn&& fn) {
  PauliOperator p(n);
  for_each_combination(n, w, [&](const std::vector<std::size_t>& support) {
    std::vector<unsigned> letters(w, 1);
    while (true) {
      for (std::size_t i = 0; i < w; ++i) p.set_letter(support[i], letters[i]);
      fn(static_cast<const PauliOperator&>(p));
      std::size_t i = w;
      while (i > 0 && letters[i - 1] == 3) letters[--i] = 1;
      if (i == 0) break;
      ++letters[i - 1];
    }
    for (std::size_t q : support) p.set_letter(q, 0);
  });
}

/// Stabilizer code given by ell = n - k independent commuting generators.
/// The check matrix has one row [x | z] per generator, in generator order.
class StabilizerCode {
 public:
  StabilizerCode(std::vector<PauliOperator> generators, std::optional<std::size_t> distance = std::nullopt,
                 std::string name = {})
      : generators_(std::move(generators)), distance_(distance), name_(std::move(name)) {
    if (generators_.empty()) throw std::invalid_argument("stabilizer code needs at least one generator");
    n_ = generators_.front().num_qubits();
    std::vector<BitVector> rows;
    for (const auto& g : generators_) {
      if (g.num_qubits() != n_) throw std::invalid_argument("generators act on different numbers of qubits");
      rows.push_back(g.symplectic_row());
    }
    if (generators_.size() > n_) throw std::invalid_argument("more generators than qubits");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      for (std::size_t j = i + 1; j < generators_.size(); ++j) {
        if (generators_[i].anticommutes(generators_[j])) {
          throw std::invalid_argument("generators " + std::to_string(i) + " and " + std::to_string(j) +
                                      " anticommute");
        }
      }
    }
    check_ = BinaryMatrix::from_rows(std::move(rows), 2 * n_);
    if (rank(check_) != generators_.size()) throw std::invalid_argument("stabilizer generators are not independent");
    stabilizer_space_.emplace(check_);
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t ell() const { return generators_.size(); }
  [[nodiscard]] std::size_t k() const { return n_ - ell(); }
  [[nodiscard]] std::optional<std::size_t> distance() const { return distance_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<PauliOperator>& generators() const { return generators_; }
  [[nodiscard]] const BinaryMatrix& check_matrix() const { return check_; }

  /// Data errors guaranteed correctable, floor((d-1)/2); requires a known distance.
  [[nodiscard]] std::size_t correctable_weight() const {
    if (!distance_) throw std::logic_error("code distance unknown");
    return *distance_ == 0 ? 0 : (*distance_ - 1) / 2;
  }

  [[nodiscard]] bool in_stabilizer_group(const PauliOperator& p) const {
    return stabilizer_space_->contains(p.symplectic_row());
  }

  void set_distance(std::size_t d) { distance_ = d; }

 private:
  std::size_t n_ = 0;
  std::vector<PauliOperator> generators_;
  std::optional<std::size_t> distance_;
  std::string name_;
  BinaryMatrix check_;
  std::optional<RowSpace> stabilizer_space_;
};

/// Bit i is 1 iff `e` anticommutes with generator i.
inline BitVector syndrome_of(const StabilizerCode& code, const PauliOperator& e) {
  if (e.num_qubits() != code.n()) throw std::invalid_argument("syndrome_of: error size does not match code");
  BitVector s(code.ell());
  for (std::size_t i = 0; i < code.ell(); ++i) {
    if (code.generators()[i].anticommutes(e)) s.set(i);
  }
  return s;
}

/// CSS code with X-type generators from the rows of h followed by Z-type
/// generators from the same rows.
inline StabilizerCode css_from_parity(const BinaryMatrix& h, std::optional<std::size_t> distance = std::nullopt,
                                      std::string name = {}) {
  if (rank(h) != h.rows()) throw std::invalid_argument("css_from_parity: parity matrix is rank deficient");
  if (mat_mul(h, h.transpose()) != BinaryMatrix(h.rows(), h.rows())) {
    throw std::invalid_argument("css_from_parity: H H^T != 0, X and Z generators would anticommute");
  }
  const std::size_t n = h.cols();
  std::vector<PauliOperator> gens;
  for (std::size_t r = 0; r < h.rows(); ++r) gens.emplace_back(h.row(r), BitVector(n));
  for (std::size_t r = 0; r < h.rows(); ++r) gens.emplace_back(BitVector(n), h.row(r));
  return StabilizerCode(std::move(gens), distance, std::move(name));
}

/// Parity-check matrix of the [7,4,3] Hamming code (column j is j+1 in binary, LSB first).
inline BinaryMatrix hamming_7_4_parity() {
  return BinaryMatrix::from_strings({"1010101", "0110011", "0001111"});
}

inline StabilizerCode steane_code() { return css_from_parity(hamming_7_4_parity(), 3, "steane"); }

enum class ResidualClass { kTrivial, kLogical, kDetectable };

inline const char* to_string(ResidualClass c) {
  switch (c) {
    case ResidualClass::kTrivial: return "trivial";
    case ResidualClass::kLogical: return "logical";
    case ResidualClass::kDetectable: return "detectable";
  }
  return "?";
}

inline ResidualClass classify_residual(const StabilizerCode& code, const PauliOperator& residual) {
  if (residual.num_qubits() != code.n()) throw std::invalid_argument("classify_residual: size mismatch");
  for (const auto& g : code.generators()) {
    if (g.anticommutes(residual)) return ResidualClass::kDetectable;
  }
  return code.in_stabilizer_group(residual) ? ResidualClass::kTrivial : ResidualClass::kLogical;
}

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Minimum weight of a logical operator, by enumeration in increasing weight.
/// Returns nullopt when k = 0 (no logical operators).
inline std::optional<std::size_t> code_distance(const StabilizerCode& code,
                                                std::uint64_t budget = kDefaultEnumerationBudget) {
  if (code.k() == 0) return std::nullopt;
  std::uint64_t spent = 0;
  for (std::size_t w = 1; w <= code.n(); ++w) {
    spent = saturating_add(spent, pauli_count_of_weight(code.n(), w));
    if (spent > budget) throw BudgetExceeded("code_distance", spent, budget);
    bool found = false;
    for_each_pauli_of_weight(code.n(), w, [&](const PauliOperator& p) {
      if (!found && classify_residual(code, p) == ResidualClass::kLogical) found = true;
    });
    if (found) return w;
  }
  return std::nullopt;
}

/// Minimum-weight syndrome decoder by exhaustive enumeration.
class LookupDecoder {
 public:
  /// Enumerates Paulis of weight 0..max_weight (throws BudgetExceeded if that
  /// alone exceeds `budget`). With `extend`, keeps going to higher weights
  /// until every syndrome is covered or the budget runs out. Each syndrome
  /// maps to the lexicographically smallest error of the least weight
  /// that produces it.
  static LookupDecoder build(const StabilizerCode& code, std::size_t max_weight, bool extend = true,
                             std::uint64_t budget = kDefaultEnumerationBudget) {
    const std::uint64_t required = pauli_count_up_to_weight(code.n(), max_weight);
    if (required > budget) throw BudgetExceeded("lookup decoder", required, budget);
    LookupDecoder dec;
    dec.n_ = code.n();
    dec.ell_ = code.ell();
    const std::uint64_t total_syndromes = code.ell() >= 63 ? kSaturated : (std::uint64_t{1} << code.ell());
    std::uint64_t spent = 0;
    for (std::size_t w = 0; w <= code.n(); ++w) {
      if (w > max_weight) {
        if (!extend || dec.table_.size() >= total_syndromes) break;
        const std::uint64_t next = saturating_add(spent, pauli_count_of_weight(code.n(), w));
        if (next > budget) break;
      }
      spent = saturating_add(spent, pauli_count_of_weight(code.n(), w));
      std::unordered_map<BitVector, PauliOperator, BitVectorHash> layer;
      for_each_pauli_of_weight(code.n(), w, [&](const PauliOperator& p) {
        BitVector s = syndrome_of(code, p);
        if (dec.table_.contains(s)) return;
        auto it = layer.find(s);
        if (it == layer.end()) {
          layer.emplace(std::move(s), p);
        } else if (p.lex_less(it->second)) {
          it->second = p;
        }
      });
      for (auto& [s, p] : layer) dec.table_.emplace(s, std::move(p));
      dec.max_weight_used_ = w;
    }
    return dec;
  }

  /// nullopt for syndromes no enumerated error reaches.
  [[nodiscard]] std::optional<PauliOperator> decode(const BitVector& syndrome) const {
    if (syndrome.size() != ell_) throw std::invalid_argument("lookup decoder: syndrome length mismatch");
    auto it = table_.find(syndrome);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::size_t size() const { return table_.size(); }
  [[nodiscard]] std::size_t num_qubits() const { return n_; }
  [[nodiscard]] std::size_t syndrome_length() const { return ell_; }
  [[nodiscard]] std::size_t max_weight_used() const { return max_weight_used_; }
  [[nodiscard]] bool covers_all_syndromes() const {
    return ell_ < 63 && table_.size() == (std::uint64_t{1} << ell_);
  }

  /// Number of table entries whose representative has weight exactly w.
  [[nodiscard]] std::size_t entries_of_weight(std::size_t w) const {
    std::size_t c = 0;
    for (const auto& [s, p] : table_) c += p.weight() == w ? 1 : 0;
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::size_t ell_ = 0;
  std::size_t max_weight_used_ = 0;
  std::unordered_map<BitVector, PauliOperator, BitVectorHash> table_;
};

inline LookupDecoder lookup_decoder_build(const StabilizerCode& code, std::size_t max_weight) {
  return LookupDecoder::build(code, max_weight);
}

/// Text format: "n k" on the first line, then n - k Pauli strings.
/// '#' starts a comment line.
inline StabilizerCode read_stabilizer_code(std::istream& is, std::string name = {}) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.size() < 2) throw std::invalid_argument("stabilizer code text: expected 'n k' header");
  std::size_t n = 0;
  std::size_t k = 0;
  try {
    n = std::stoul(tokens[0]);
    k = std::stoul(tokens[1]);
  } catch (const std::exception&) {
    throw std::invalid_argument("stabilizer code text: malformed 'n k' header");
  }
  if (k > n) throw std::invalid_argument("stabilizer code text: k exceeds n");
  if (tokens.size() - 2 != n - k) {
    throw std::invalid_argument("stabilizer code text: expected " + std::to_string(n - k) + " generators, found " +
                                std::to_string(tokens.size() - 2));
  }
  std::vector<PauliOperator> gens;
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    auto p = PauliOperator::parse(tokens[i]);
    if (p.num_qubits() != n) throw std::invalid_argument("stabilizer code text: generator length differs from n");
    gens.push_back(std::move(p));
  }
  return StabilizerCode(std::move(gens), std::nullopt, std::move(name));
}

inline void write_stabilizer_code(std::ostream& os, const StabilizerCode& code) {
  os << code.n() << ' ' << code.k() << '\n';
  for (const auto& g : code.generators()) os << g.to_string() << '\n';
}

}  // namespace qdsbch

#endif  // QDSBCH_STABILIZER_HPP
