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
#include <set>

#include "oracles.hpp"
#include "qdsbch/sim.hpp"

using namespace qdsbch;

namespace {

const QdsCode& steane_bch() {
  static const QdsCode q = qds_assemble(steane_code(), bch_sm(6, 3));
  return q;
}

const LookupDecoder& steane_decoder() {
  static const LookupDecoder d = lookup_decoder_build(steane_code(), 1);
  return d;
}

GridOptions small_options(std::uint64_t seed) {
  GridOptions opt;
  opt.trials_boundary = 400;
  opt.trials_far = 50;
  opt.seed = seed;
  return opt;
}

double direct_pmf(std::size_t w, double p, std::size_t n) {
  double c = 1;
  for (std::size_t i = 1; i <= w; ++i) c = c * static_cast<double>(n - w + i) / static_cast<double>(i);
  return c * std::pow(p, static_cast<double>(w)) * std::pow(1 - p, static_cast<double>(n - w));
}

}  // namespace

TEST(MeasurementErrorProb, Examples) {
  EXPECT_NEAR(stabilizer_meas_error_prob(3, 0.1), 0.244, 1e-12);
  EXPECT_THROW(stabilizer_meas_error_prob(0, 0.3), std::invalid_argument);
  EXPECT_NEAR(stabilizer_meas_error_prob(1, 0.3), 0.3, 1e-15);
  EXPECT_NEAR(stabilizer_meas_error_prob(5, 0.5), 0.5, 1e-12);
}

TEST(MeasurementErrorProb, MatchesClosedForm) {
  for (std::size_t w = 1; w <= 64; ++w) {
    for (double p : {1e-4, 1e-3, 0.01, 0.05, 0.1, 0.3}) {
      const double closed = (1 - std::pow(1 - 2 * p, static_cast<double>(w))) / 2;
      const double got = stabilizer_meas_error_prob(w, p);
      ASSERT_NEAR(got, closed, 1e-12 * closed) << w << " " << p;
      ASSERT_NEAR(got, oracle::odd_flip_prob(static_cast<int>(w), p), 1e-12 * closed);
    }
  }
}

TEST(BinomialPmf, MatchesDirectProduct) {
  for (std::size_t n : {7U, 21U, 40U}) {
    double total = 0;
    for (std::size_t w = 0; w <= n; ++w) {
      const double a = binomial_pmf(w, 0.07, n);
      EXPECT_NEAR(a, direct_pmf(w, 0.07, n), 1e-12 * std::max(a, 1e-300));
      total += a;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  EXPECT_EQ(binomial_pmf(0, 0.0, 5), 1.0);
  EXPECT_EQ(binomial_pmf(1, 0.0, 5), 0.0);
  EXPECT_EQ(binomial_pmf(5, 1.0, 5), 1.0);
  EXPECT_EQ(binomial_pmf(6, 0.5, 5), 0.0);
}

TEST(Sampling, WeightsAndRanges) {
  SplitMix64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t w = rng.bounded(8);
    const auto e = sample_pauli_of_weight(7, w, rng);
    ASSERT_EQ(e.weight(), w);
    const auto s = sample_pattern_of_weight(21, w, rng);
    ASSERT_EQ(s.count(), w);
    const auto sup = sample_support(21, w, rng);
    ASSERT_EQ(std::set<std::size_t>(sup.begin(), sup.end()).size(), w);
    ASSERT_LT(rng.uniform(), 1.0);
  }
  EXPECT_THROW(sample_support(3, 4, rng), std::invalid_argument);
}

TEST(Sampling, BoundedIsRoughlyUniform) {
  SplitMix64 rng(11);
  std::vector<int> counts(3);
  for (int i = 0; i < 30000; ++i) ++counts[rng.bounded(3)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(EstimateCell, GuaranteedCellsNeverFail) {
  const auto& q = steane_bch();
  EXPECT_EQ(estimate_cell(q, steane_decoder(), 0, 0, 10, 1).failures, 0U);
  for (std::size_t ws = 0; ws <= 3; ++ws) {
    const auto c = estimate_cell(q, steane_decoder(), 1, ws, 2000, 3);
    EXPECT_EQ(c.trials, 2000U);
    EXPECT_EQ(c.failures, 0U) << ws;
  }
}

TEST(EstimateCell, AllFlipsCell) {
  const auto c = estimate_cell(steane_bch(), steane_decoder(), 0, 21, 5, 1);
  EXPECT_TRUE(c.failures == 0 || c.failures == 5);
  EXPECT_THROW(estimate_cell(steane_bch(), steane_decoder(), 8, 0, 5, 1), std::invalid_argument);
  EXPECT_THROW(estimate_cell(steane_bch(), steane_decoder(), 0, 22, 5, 1), std::invalid_argument);
  EXPECT_THROW(estimate_cell(steane_bch(), steane_decoder(), 0, 0, 0, 1), std::invalid_argument);
}

TEST(EstimateCell, SplitsIntoContiguousChunks) {
  const auto whole = estimate_cell(steane_bch(), steane_decoder(), 2, 4, 600, 9);
  auto parts = estimate_cell(steane_bch(), steane_decoder(), 2, 4, 250, 9, 0);
  parts += estimate_cell(steane_bch(), steane_decoder(), 2, 4, 350, 9, 250);
  EXPECT_EQ(whole, parts);
  EXPECT_GT(whole.failures, 0U);
}

TEST(BuildGrid, DeterministicAcrossThreadCounts) {
  auto opt = small_options(42);
  const auto a = build_grid(steane_bch(), steane_decoder(), opt);
  opt.threads = 4;
  const auto b = build_grid(steane_bch(), steane_decoder(), opt);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.cells.size(), 8U * 22U);
  EXPECT_EQ(a.cells.at({1, 2}).trials, 400U);
  EXPECT_EQ(a.cells.at({2, 4}).trials, 400U);
  EXPECT_EQ(a.cells.at({3, 0}).trials, 50U);
  opt.seed = 43;
  EXPECT_NE(build_grid(steane_bch(), steane_decoder(), opt), a);
}

TEST(BuildGrid, MetaDescribesInstance) {
  const auto m = describe(steane_bch());
  EXPECT_EQ(m.code, "steane");
  EXPECT_EQ(m.sm, "bch");
  EXPECT_EQ(m.n, 7U);
  EXPECT_EQ(m.k, 1U);
  EXPECT_EQ(m.d, 3U);
  EXPECT_EQ(m.n_s, 21U);
  EXPECT_EQ(m.t_q, 1U);
  EXPECT_EQ(m.t_s, 3U);
  EXPECT_EQ(m.extra, 15U);
}

TEST(SimGridMerge, AddsCounts) {
  auto opt = small_options(1);
  opt.max_wq = 2;
  opt.max_ws = 2;
  auto a = build_grid(steane_bch(), steane_decoder(), opt);
  const auto b = a;
  a.merge(b);
  EXPECT_EQ(a.cells.at({2, 2}).trials, 2 * b.cells.at({2, 2}).trials);
  EXPECT_EQ(a.cells.at({2, 2}).failures, 2 * b.cells.at({2, 2}).failures);
  auto other = build_grid(qds_assemble(steane_code(), identity_sm(6)), steane_decoder(), opt);
  EXPECT_THROW(a.merge(other), std::invalid_argument);
}

TEST(Wilson, KnownValues) {
  const double z = 1.959963984540054;
  const auto [lo0, hi0] = wilson_interval(0, 10);
  EXPECT_EQ(lo0, 0.0);
  EXPECT_NEAR(hi0, z * z / (10 + z * z), 1e-12);
  const auto [lo, hi] = wilson_interval(50, 100);
  EXPECT_NEAR(lo + hi, 1.0, 1e-12);
  EXPECT_NEAR(hi - lo, 2 * z * std::sqrt(0.25 / 100 + z * z / 40000) / (1 + z * z / 100), 1e-12);
  const auto [l1, h1] = wilson_interval(3, 1000);
  EXPECT_LT(l1, 0.003);
  EXPECT_GT(h1, 0.003);
}

TEST(CombineGrid, ZeroNoiseAndCollapse) {
  const auto grid = build_grid(steane_bch(), steane_decoder(), small_options(7));
  const auto zero = combine_grid(grid, 0, 0);
  EXPECT_EQ(zero.p_err, 0.0);
  EXPECT_EQ(zero.truncation_mass, 0.0);
  // With p_q = 0 only the w_q = 0 column contributes.
  const double ps = 0.05;
  double expect = 0;
  for (std::size_t ws = 0; ws <= 21; ++ws) expect += direct_pmf(ws, ps, 21) * grid.cells.at({0, ws}).rate();
  EXPECT_NEAR(combine_grid(grid, 0, ps, 0).p_err, expect, 1e-15);
  EXPECT_THROW(combine_grid(grid, -0.1, 0.1), std::invalid_argument);
}

TEST(CombineGrid, TruncationAccountsForDroppedMass) {
  const auto grid = build_grid(steane_bch(), steane_decoder(), small_options(7));
  const double pq = 0.002;
  const double ps = 0.01;
  const auto est = combine_grid(grid, pq, ps, 1e-9);
  double kept = 0;
  for (std::size_t wq = 0; wq <= 7; ++wq) {
    for (std::size_t ws = 0; ws <= 21; ++ws) {
      const double a = direct_pmf(wq, pq, 7) * direct_pmf(ws, ps, 21);
      if (a >= 1e-9) kept += a;
    }
  }
  EXPECT_GT(est.dropped_cells, 0U);
  EXPECT_NEAR(kept + est.truncation_mass, 1.0, 1e-12);
  EXPECT_LE(est.lower, est.p_err);
  EXPECT_GE(est.upper, est.p_err);
}

TEST(CombineGrid, MissingCellIsAnError) {
  auto opt = small_options(7);
  opt.max_wq = 1;
  opt.max_ws = 3;
  const auto grid = build_grid(steane_bch(), steane_decoder(), opt);
  EXPECT_THROW(combine_grid(grid, 0.01, 0.01, 1e-12), std::invalid_argument);
  // At tiny rates every missing cell falls under the threshold.
  EXPECT_NO_THROW(combine_grid(grid, 1e-7, 1e-5, 1e-12));
  EXPECT_EQ(combine_grid(grid, 1e-7, 1e-5, 1e-12).p_err, 0.0);
}

TEST(Sweep, RatioAndSlopes) {
  const auto grid = build_grid(steane_bch(), steane_decoder(), small_options(3));
  const auto curve = sweep(grid, {1e-3, 2e-3, 4e-3}, 0.01);
  ASSERT_EQ(curve.size(), 3U);
  for (const auto& pt : curve) EXPECT_DOUBLE_EQ(pt.p_q, pt.p_s * 0.01);
  EXPECT_THROW(sweep(grid, {0.5}, 10.0), std::invalid_argument);

  // Syndrome noise only: BCH needs four flips, bare measurement fails on one.
  const auto bch_curve = sweep(grid, {1e-4, 2e-4, 4e-4, 8e-4}, 0.0);
  EXPECT_NEAR(loglog_slope(bch_curve), 4.0, 0.1);
  const auto bare = qds_assemble(steane_code(), identity_sm(6));
  const auto bare_curve = sweep(bare, steane_decoder(), {1e-4, 2e-4, 4e-4, 8e-4}, 0.0, small_options(3));
  EXPECT_NEAR(loglog_slope(bare_curve), 1.0, 0.1);
}

TEST(DirectMonteCarlo, AgreesWithStratifiedEstimate) {
  GridOptions opt;
  opt.trials_boundary = 4000;
  opt.trials_far = 1000;
  opt.seed = 17;
  opt.threads = 4;
  const auto grid = build_grid(steane_bch(), steane_decoder(), opt);
  const double p = 0.04;
  const auto strat = combine_grid(grid, p, p);
  const auto direct = direct_monte_carlo(steane_bch(), steane_decoder(), {p, p, false}, 20000, 17);
  const double sd = std::sqrt(strat.p_err * (1 - strat.p_err) / 20000.0);
  EXPECT_NEAR(direct.rate(), strat.p_err, 5 * sd + 0.005);
}

TEST(DirectMonteCarlo, WeightAwareRaisesFailureRate) {
  const auto& q = steane_bch();
  const auto flat = direct_monte_carlo(q, steane_decoder(), {0.0, 0.02, false}, 20000, 5);
  const auto aware = direct_monte_carlo(q, steane_decoder(), {0.0, 0.02, true}, 20000, 5);
  EXPECT_GT(aware.failures, flat.failures);
  EXPECT_EQ(direct_monte_carlo(q, steane_decoder(), {0.0, 0.0, true}, 100, 5).failures, 0U);
  EXPECT_THROW(direct_monte_carlo(q, steane_decoder(), {1.5, 0.0, false}, 1, 5), std::invalid_argument);
}
