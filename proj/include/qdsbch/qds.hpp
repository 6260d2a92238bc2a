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

#ifndef QDSBCH_QDS_HPP
#define QDSBCH_QDS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qdsbch/bch.hpp"
#include "qdsbch/linalg.hpp"
#include "qdsbch/stabilizer.hpp"

namespace qdsbch {

/// Classical [n_s, ell, 2t_s + 1] code whose generator matrix selects which
/// stabilizer products are measured.
class SyndromeMeasurementCode {
 public:
  virtual ~SyndromeMeasurementCode() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual std::size_t ell() const = 0;
  [[nodiscard]] virtual std::size_t block_length() const = 0;
  /// Guaranteed-correctable syndrome bit flips.
  [[nodiscard]] virtual std::size_t correctable() const = 0;
  /// ell x n_s generator matrix.
  [[nodiscard]] virtual const BinaryMatrix& encode_matrix() const = 0;
  /// Recovers the ell-bit syndrome, or nullopt on detected decoding failure.
  [[nodiscard]] virtual std::optional<BitVector> decode(const BitVector& word) const = 0;

  [[nodiscard]] virtual BitVector encode(const BitVector& syndrome) const {
    return encode_matrix().left_multiply(syndrome);
  }
  [[nodiscard]] std::size_t extra_measurements() const { return block_length() - ell(); }
};

/// Shortened primitive narrow-sense BCH code of dimension ell.
class BchSyndromeCode final : public SyndromeMeasurementCode {
 public:
  explicit BchSyndromeCode(BchCode code) : code_(std::move(code)), g_(code_.generator_matrix()) {}

  [[nodiscard]] std::string name() const override { return "bch"; }
  [[nodiscard]] std::size_t ell() const override { return code_.dimension(); }
  [[nodiscard]] std::size_t block_length() const override { return code_.length(); }
  [[nodiscard]] std::size_t correctable() const override { return code_.t(); }
  [[nodiscard]] const BinaryMatrix& encode_matrix() const override { return g_; }
  [[nodiscard]] std::optional<BitVector> decode(const BitVector& word) const override {
    auto res = code_.decode(word);
    if (!res) return std::nullopt;
    return std::move(res->message);
  }
  [[nodiscard]] BitVector encode(const BitVector& syndrome) const override { return code_.encode(syndrome); }

  [[nodiscard]] const BchCode& code() const { return code_; }

 private:
  BchCode code_;
  BinaryMatrix g_;
};

/// `reps` consecutive rounds measuring all ell generators; per-bit majority vote.
/// reps = 1 is the identity (no redundancy) code.
class RepetitionSyndromeCode final : public SyndromeMeasurementCode {
 public:
  RepetitionSyndromeCode(std::size_t ell, std::size_t reps) : ell_(ell), reps_(reps), g_(ell, ell * reps) {
    if (ell == 0) throw std::invalid_argument("repetition_sm: ell must be positive");
    if (reps == 0 || reps % 2 == 0) throw std::invalid_argument("repetition_sm: reps must be odd and >= 1");
    for (std::size_t i = 0; i < ell; ++i) {
      for (std::size_t r = 0; r < reps; ++r) g_.set(i, r * ell + i);
    }
  }

  [[nodiscard]] std::string name() const override { return reps_ == 1 ? "identity" : "repetition"; }
  [[nodiscard]] std::size_t ell() const override { return ell_; }
  [[nodiscard]] std::size_t block_length() const override { return ell_ * reps_; }
  [[nodiscard]] std::size_t correctable() const override { return (reps_ - 1) / 2; }
  [[nodiscard]] const BinaryMatrix& encode_matrix() const override { return g_; }
  [[nodiscard]] std::size_t repetitions() const { return reps_; }

  [[nodiscard]] std::optional<BitVector> decode(const BitVector& word) const override {
    if (word.size() != block_length()) throw std::invalid_argument("repetition decode: length mismatch");
    BitVector out(ell_);
    for (std::size_t i = 0; i < ell_; ++i) {
      std::size_t ones = 0;
      for (std::size_t r = 0; r < reps_; ++r) ones += word.get(r * ell_ + i) ? 1 : 0;
      if (2 * ones > reps_) out.set(i);
    }
    return out;
  }

 private:
  std::size_t ell_;
  std::size_t reps_;
  BinaryMatrix g_;
};

inline std::shared_ptr<const SyndromeMeasurementCode> bch_sm(std::size_t ell, std::size_t t,
                                                             MSelection rule = MSelection::kBound) {
  return std::make_shared<const BchSyndromeCode>(bch_select_m(ell, t, rule));
}

inline std::shared_ptr<const SyndromeMeasurementCode> repetition_sm(std::size_t ell, std::size_t reps) {
  return std::make_shared<const RepetitionSyndromeCode>(ell, reps);
}

inline std::shared_ptr<const SyndromeMeasurementCode> identity_sm(std::size_t ell) { return repetition_sm(ell, 1); }

/// Stabilizer code measured through the rows of H_Q = G^T H.
class QdsCode {
 public:
  QdsCode(StabilizerCode base, std::shared_ptr<const SyndromeMeasurementCode> sm)
      : base_(std::move(base)), sm_(std::move(sm)) {
    if (!sm_) throw std::invalid_argument("qds_assemble: null syndrome measurement code");
    if (sm_->ell() != base_.ell()) {
      throw std::invalid_argument("qds_assemble: SM code encodes " + std::to_string(sm_->ell()) +
                                  " bits but the stabilizer code has " + std::to_string(base_.ell()) + " generators");
    }
    h_q_ = mat_mul(sm_->encode_matrix().transpose(), base_.check_matrix());
    const std::size_t n = base_.n();
    twisted_ = BinaryMatrix(h_q_.rows(), 2 * n);
    for (std::size_t r = 0; r < h_q_.rows(); ++r) {
      const BitVector& row = h_q_.row(r);
      twisted_.row_mut(r) = row.slice(n, n).concat(row.slice(0, n));
    }
  }

  [[nodiscard]] const StabilizerCode& base() const { return base_; }
  [[nodiscard]] const SyndromeMeasurementCode& sm() const { return *sm_; }
  [[nodiscard]] std::shared_ptr<const SyndromeMeasurementCode> sm_ptr() const { return sm_; }
  [[nodiscard]] const BinaryMatrix& h_q() const { return h_q_; }
  [[nodiscard]] std::size_t num_measurements() const { return h_q_.rows(); }
  [[nodiscard]] std::size_t extra_measurements() const { return sm_->extra_measurements(); }

  /// Row i of H_Q as a Pauli operator.
  [[nodiscard]] PauliOperator measured_operator(std::size_t i) const { return PauliOperator::from_symplectic(h_q_.row(i)); }

  /// Noiseless outcomes: bit i is 1 iff row i anticommutes with the error.
  [[nodiscard]] BitVector ideal_outcomes(const PauliOperator& data_error) const {
    if (data_error.num_qubits() != base_.n()) throw std::invalid_argument("qds_measure: data error size mismatch");
    return twisted_.multiply(data_error.symplectic_row());
  }

 private:
  StabilizerCode base_;
  std::shared_ptr<const SyndromeMeasurementCode> sm_;
  BinaryMatrix h_q_;
  // Rows [z | x], so a dot product with [x | z] is the symplectic product.
  BinaryMatrix twisted_;
};

inline QdsCode qds_assemble(StabilizerCode base, std::shared_ptr<const SyndromeMeasurementCode> sm) {
  return {std::move(base), std::move(sm)};
}

inline BitVector qds_measure(const QdsCode& q, const PauliOperator& data_error, const BitVector& synd_error) {
  if (synd_error.size() != q.num_measurements()) throw std::invalid_argument("qds_measure: syndrome error length mismatch");
  return q.ideal_outcomes(data_error) ^ synd_error;
}

enum class DecodeStatus { kOk, kSyndromeDecodeFailure, kUncorrectable };

struct TwoStepResult {
  DecodeStatus status = DecodeStatus::kOk;
  std::optional<BitVector> syndrome;
  std::optional<PauliOperator> correction;

  [[nodiscard]] bool ok() const { return status == DecodeStatus::kOk; }
};

/// SM-code decode to an ell-bit syndrome, then lookup of the quantum correction.
inline TwoStepResult qds_decode_two_step(const QdsCode& q, const BitVector& measured, const LookupDecoder& decoder) {
  if (measured.size() != q.num_measurements()) throw std::invalid_argument("two-step decode: measurement length mismatch");
  if (decoder.syndrome_length() != q.base().ell() || decoder.num_qubits() != q.base().n()) {
    throw std::invalid_argument("two-step decode: decoder built for a different code");
  }
  TwoStepResult out;
  out.syndrome = q.sm().decode(measured);
  if (!out.syndrome) {
    out.status = DecodeStatus::kSyndromeDecodeFailure;
    return out;
  }
  out.correction = decoder.decode(*out.syndrome);
  if (!out.correction) out.status = DecodeStatus::kUncorrectable;
  return out;
}

/// Extra measurements of the DPM-based construction for t_c syndrome errors.
struct FujiwaraCount {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> m_list;
};

namespace detail {

using boost::multiprecision::cpp_int;

inline cpp_int binomial_big(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  cpp_int acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

/// Smallest z with 2^z >= value * num / den.
inline std::uint64_t ceil_log2_scaled(const cpp_int& value, const cpp_int& num, const cpp_int& den) {
  const cpp_int target = value * num;
  std::uint64_t z = 0;
  cpp_int pow = den;
  while (pow < target) {
    pow <<= 1;
    ++z;
  }
  return z;
}

/// ceil(log2(value * e)) for value >= 1, using Taylor partial sums of e as
/// rational lower/upper bounds until both give the same answer.
inline std::uint64_t ceil_log2_times_e(const cpp_int& value) {
  for (std::uint64_t terms = 12;; terms *= 2) {
    // S = sum_{j<=terms} 1/j!  <  e  <  S + 1/(terms! * terms)
    cpp_int fact = 1;
    cpp_int num = 1;
    for (std::uint64_t j = 1; j <= terms; ++j) {
      fact *= j;
      num = num * j + 1;
    }
    const cpp_int den = fact;
    const std::uint64_t lo = ceil_log2_scaled(value, num * terms, den * terms);
    const std::uint64_t hi = ceil_log2_scaled(value, num * terms + 1, den * terms);
    if (lo == hi) return lo;
  }
}

}  // namespace detail

/// m_i = ceil(log2(C(ell,2i) - C(ell-2i,2i)) + log2 e) and
/// total = 2 t_c + sum_i (2 t_c - 2i + 1) m_i, in exact arithmetic.
inline FujiwaraCount fujiwara_extra_measurements(std::size_t ell, std::size_t t_c) {
  if (2 * t_c > ell) {
    throw std::invalid_argument("fujiwara: need 2*t_c <= ell (t_c=" + std::to_string(t_c) + ", ell=" +
                                std::to_string(ell) + ")");
  }
  FujiwaraCount out;
  out.total = 2 * t_c;
  const auto l = static_cast<std::int64_t>(ell);
  for (std::size_t i = 1; i <= t_c; ++i) {
    const auto two_i = static_cast<std::int64_t>(2 * i);
    const detail::cpp_int diff = detail::binomial_big(l, two_i) - detail::binomial_big(l - two_i, two_i);
    if (diff <= 0) throw std::logic_error("fujiwara: nonpositive binomial difference");
    const std::uint64_t mi = detail::ceil_log2_times_e(diff);
    out.m_list.push_back(mi);
    out.total += (2 * t_c - 2 * i + 1) * mi;
  }
  return out;
}

struct OverheadRow {
  std::size_t ell = 0;
  std::size_t t = 0;
  std::optional<std::size_t> bch;
  std::optional<std::uint64_t> fujiwara;
  std::size_t repetition = 0;
};

/// Extra measurements per (ell, t) for BCH, DPM-based and (2t+1)-fold repetition.
/// Empty optionals mark inapplicable cells.
inline std::vector<OverheadRow> overhead_table(const std::vector<std::size_t>& ells, const std::vector<std::size_t>& ts,
                                               MSelection rule = MSelection::kBound) {
  std::vector<OverheadRow> rows;
  for (std::size_t ell : ells) {
    for (std::size_t t : ts) {
      OverheadRow row;
      row.ell = ell;
      row.t = t;
      if (const auto m = bch_select_degree(ell, t, rule)) row.bch = bch_redundancy(*m, t);
      if (2 * t <= ell) row.fujiwara = fujiwara_extra_measurements(ell, t).total;
      row.repetition = 2 * t * ell;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace qdsbch

#endif  // QDSBCH_QDS_HPP
