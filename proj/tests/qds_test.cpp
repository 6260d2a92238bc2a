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

#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>
#include <set>

#include "qdsbch/qds.hpp"

using namespace qdsbch;

namespace {

QdsCode steane_bch() { return qds_assemble(steane_code(), bch_sm(6, 3)); }

StabilizerCode five_qubit_code() {
  return StabilizerCode({pauli_parse("XZZXI"), pauli_parse("IXZZX"), pauli_parse("XIXZZ"), pauli_parse("ZXIXZ")}, 3,
                        "five");
}

/// Floating-point evaluation of ceil(log2(D) + log2(e)), used only where
/// the argument is not within 1e-9 of an integer.
std::optional<std::uint64_t> float_mi(std::size_t ell, std::size_t i) {
  auto binom = [](long double n, long double k) -> long double {
    if (k > n || n < 0) return 0;
    long double acc = 1;
    for (int j = 1; j <= static_cast<int>(k); ++j) acc = acc * (n - k + j) / j;
    return acc;
  };
  const long double d = binom(ell, 2.0L * i) - binom(static_cast<long double>(ell) - 2.0L * i, 2.0L * i);
  const long double x = std::log2(d) + std::log2(std::exp(1.0L));
  if (std::abs(x - std::round(x)) < 1e-9) return std::nullopt;
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

TEST(QdsAssemble, SteaneWithBch) {
  const auto q = steane_bch();
  EXPECT_EQ(q.h_q().rows(), 21U);
  EXPECT_EQ(q.h_q().cols(), 14U);
  EXPECT_EQ(q.extra_measurements(), 15U);
  EXPECT_EQ(q.h_q(), mat_mul(q.sm().encode_matrix().transpose(), q.base().check_matrix()));
  const RowSpace stabilizers(q.base().check_matrix());
  for (std::size_t i = 0; i < q.num_measurements(); ++i) {
    EXPECT_TRUE(stabilizers.contains(q.h_q().row(i)));
    for (std::size_t j = 0; j < q.num_measurements(); ++j) EXPECT_TRUE(q.measured_operator(i).commutes(q.measured_operator(j)));
  }
}

TEST(QdsAssemble, IdentityCodeGivesCheckMatrix) {
  const auto q = qds_assemble(steane_code(), identity_sm(6));
  EXPECT_EQ(q.h_q(), q.base().check_matrix());
  EXPECT_EQ(q.extra_measurements(), 0U);
  EXPECT_EQ(q.sm().correctable(), 0U);
  EXPECT_EQ(q.sm().name(), "identity");
}

TEST(QdsAssemble, DimensionMismatch) {
  EXPECT_THROW(qds_assemble(steane_code(), bch_sm(5, 3)), std::invalid_argument);
  EXPECT_THROW(qds_assemble(steane_code(), nullptr), std::invalid_argument);
}

TEST(QdsMeasure, Examples) {
  const auto q = steane_bch();
  EXPECT_TRUE(qds_measure(q, PauliOperator(7), BitVector(21)).none());
  const auto e = BitVector::from_string("100100000001000000011");
  EXPECT_EQ(qds_measure(q, PauliOperator(7), e), e);
  EXPECT_THROW(qds_measure(q, PauliOperator(7), BitVector(20)), std::invalid_argument);
  EXPECT_THROW(qds_measure(q, PauliOperator(6), BitVector(21)), std::invalid_argument);
}

TEST(QdsMeasure, CleanOutcomeIsEncodedSyndrome) {
  for (const auto& base : {steane_code(), five_qubit_code()}) {
    for (const auto& sm : {bch_sm(base.ell(), 3), bch_sm(base.ell(), 1), repetition_sm(base.ell(), 3), identity_sm(base.ell())}) {
      const QdsCode q(base, sm);
      for_each_pauli_of_weight(base.n(), 1, [&](const PauliOperator& e) {
        ASSERT_EQ(qds_measure(q, e, BitVector(q.num_measurements())), sm->encode(syndrome_of(base, e)));
        ASSERT_EQ(sm->encode(syndrome_of(base, e)), sm->encode_matrix().left_multiply(syndrome_of(base, e)));
      });
    }
  }
}

TEST(RepetitionSm, Parameters) {
  const auto r = repetition_sm(6, 3);
  EXPECT_EQ(r->block_length(), 18U);
  EXPECT_EQ(r->correctable(), 1U);
  EXPECT_EQ(r->extra_measurements(), 12U);
  EXPECT_EQ(rank(r->encode_matrix()), 6U);
  const auto id = repetition_sm(6, 1);
  EXPECT_EQ(id->correctable(), 0U);
  EXPECT_EQ(id->block_length(), 6U);
  EXPECT_THROW(repetition_sm(6, 2), std::invalid_argument);
  EXPECT_THROW(repetition_sm(6, 0), std::invalid_argument);
}

TEST(RepetitionSm, MajorityFixesOneFlipPerGroup) {
  const auto r = repetition_sm(6, 3);
  for (std::uint64_t s = 0; s < 64; ++s) {
    const auto syndrome = BitVector::from_mask(s, 6);
    const auto word = r->encode(syndrome);
    // Each bit group gets no flip or a flip in copy 0, 1 or 2.
    for (std::uint64_t pattern = 0; pattern < 4096; ++pattern) {
      BitVector noisy = word;
      std::uint64_t p = pattern;
      for (std::size_t i = 0; i < 6; ++i, p >>= 2) {
        if ((p & 3U) != 0) noisy.flip(((p & 3U) - 1) * 6 + i);
      }
      ASSERT_EQ(*r->decode(noisy), syndrome);
    }
  }
}

TEST(BchSm, ContractHolds) {
  const auto sm = bch_sm(6, 3);
  EXPECT_EQ(sm->block_length(), 21U);
  EXPECT_EQ(sm->correctable(), 3U);
  EXPECT_EQ(rank(sm->encode_matrix()), 6U);
  std::mt19937_64 rng(31);
  for (std::uint64_t s = 0; s < 64; ++s) {
    const auto syndrome = BitVector::from_mask(s, 6);
    for (int i = 0; i < 50; ++i) {
      BitVector word = sm->encode(syndrome);
      const std::size_t w = rng() % 4;
      std::set<std::size_t> flips;
      while (flips.size() < w) flips.insert(rng() % 21);
      for (auto f : flips) word.flip(f);
      ASSERT_EQ(*sm->decode(word), syndrome);
    }
  }
}

TEST(TwoStepDecode, AllZeroMeasurement) {
  const auto q = steane_bch();
  const auto dec = lookup_decoder_build(q.base(), 1);
  const auto res = qds_decode_two_step(q, BitVector(21), dec);
  ASSERT_TRUE(res.ok());
  EXPECT_TRUE(res.correction->is_identity());
  EXPECT_TRUE(res.syndrome->none());
}

TEST(TwoStepDecode, RepetitionGuaranteeExhaustive) {
  const QdsCode q(steane_code(), repetition_sm(6, 3));
  const auto dec = lookup_decoder_build(q.base(), 1);
  for (std::size_t wq = 0; wq <= 1; ++wq) {
    for_each_pauli_of_weight(7, wq, [&](const PauliOperator& e) {
      for (std::size_t ws = 0; ws <= 1; ++ws) {
        for_each_combination(18, ws, [&](const std::vector<std::size_t>& flips) {
          BitVector s(18);
          for (auto f : flips) s.set(f);
          const auto res = qds_decode_two_step(q, qds_measure(q, e, s), dec);
          ASSERT_TRUE(res.ok());
          ASSERT_EQ(*res.correction, e);
        });
      }
    });
  }
}

TEST(TwoStepDecode, FourSyndromeFlipsNeverCrash) {
  const auto q = steane_bch();
  const auto dec = lookup_decoder_build(q.base(), 1);
  std::size_t bad = 0;
  std::size_t total = 0;
  for_each_combination(21, 4, [&](const std::vector<std::size_t>& flips) {
    BitVector s(21);
    for (auto f : flips) s.set(f);
    const auto res = qds_decode_two_step(q, qds_measure(q, PauliOperator(7), s), dec);
    ++total;
    if (!res.ok() || !res.correction->is_identity()) ++bad;
  });
  EXPECT_EQ(total, 5985U);
  EXPECT_GT(bad, 0U);
}

TEST(TwoStepDecode, SmFailurePropagates) {
  const auto q = steane_bch();
  const auto dec = lookup_decoder_build(q.base(), 1);
  bool saw_failure = false;
  for_each_combination(21, 4, [&](const std::vector<std::size_t>& flips) {
    if (saw_failure) return;
    BitVector s(21);
    for (auto f : flips) s.set(f);
    const auto res = qds_decode_two_step(q, s, dec);
    if (res.status == DecodeStatus::kSyndromeDecodeFailure) {
      saw_failure = true;
      EXPECT_FALSE(res.correction.has_value());
    }
  });
  EXPECT_TRUE(saw_failure);
  EXPECT_THROW(qds_decode_two_step(q, BitVector(20), dec), std::invalid_argument);
}

TEST(Fujiwara, PaperExample) {
  const auto c = fujiwara_extra_measurements(10, 3);
  EXPECT_EQ(c.total, 76U);
  EXPECT_EQ(c.m_list, (std::vector<std::uint64_t>{6, 10, 10}));
  EXPECT_EQ(fujiwara_extra_measurements(10, 0).total, 0U);
  EXPECT_THROW(fujiwara_extra_measurements(5, 3), std::invalid_argument);
}

TEST(Fujiwara, ExactCeilingAgreesWithFloatingPoint) {
  for (std::size_t ell = 2; ell <= 60; ++ell) {
    for (std::size_t t = 1; 2 * t <= ell; ++t) {
      const auto c = fujiwara_extra_measurements(ell, t);
      std::uint64_t total = 2 * t;
      for (std::size_t i = 1; i <= t; ++i) {
        const auto mi = float_mi(ell, i);
        if (mi) { ASSERT_EQ(c.m_list[i - 1], *mi) << ell << "," << i; }
        total += (2 * t - 2 * i + 1) * c.m_list[i - 1];
      }
      ASSERT_EQ(c.total, total);
    }
  }
}

TEST(OverheadTable, Examples) {
  const auto rows = overhead_table({6, 10}, {1, 3, 11});
  auto find = [&](std::size_t ell, std::size_t t) {
    for (const auto& r : rows)
      if (r.ell == ell && r.t == t) return r;
    throw std::runtime_error("missing row");
  };
  EXPECT_EQ(*find(6, 3).bch, 15U);
  EXPECT_EQ(find(6, 1).repetition, 12U);
  EXPECT_EQ(*find(10, 3).fujiwara, 76U);
  EXPECT_EQ(*find(10, 11).bch, 70U);
  EXPECT_FALSE(find(10, 11).fujiwara.has_value());
  EXPECT_FALSE(find(6, 11).fujiwara.has_value());
}

TEST(OverheadTable, MonotoneInT) {
  std::vector<std::size_t> ells;
  std::vector<std::size_t> ts;
  for (std::size_t e = 5; e <= 60; ++e) ells.push_back(e);
  for (std::size_t t = 1; t <= 12; ++t) ts.push_back(t);
  const auto rows = overhead_table(ells, ts);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].ell != rows[i - 1].ell) continue;
    EXPECT_GE(*rows[i].bch, *rows[i - 1].bch);
    EXPECT_GE(rows[i].repetition, rows[i - 1].repetition);
    if (rows[i].fujiwara && rows[i - 1].fujiwara) { EXPECT_GE(*rows[i].fujiwara, *rows[i - 1].fujiwara); }
    EXPECT_EQ(rows[i].fujiwara.has_value(), 2 * rows[i].t <= rows[i].ell);
  }
}

TEST(OverheadTable, BchExtraIsRedundancyWithinBound) {
  for (std::size_t ell = 1; ell <= 40; ++ell) {
    for (std::size_t t = 1; t <= 6; ++t) {
      const auto sm = bch_sm(ell, t);
      const auto& code = dynamic_cast<const BchSyndromeCode&>(*sm).code();
      EXPECT_EQ(sm->extra_measurements(), code.redundancy());
      EXPECT_LE(code.redundancy(), static_cast<std::size_t>(code.m()) * t);
    }
  }
}
