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

#ifndef QDSBCH_SIM_HPP
#define QDSBCH_SIM_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qdsbch/counting.hpp"
#include "qdsbch/qds.hpp"
#include "qdsbch/stabilizer.hpp"

namespace qdsbch {

/// Probability that a weight-w stabilizer measurement reports the wrong
/// value when each of its w gates flips the outcome with probability p_m:
/// the chance of an odd number of flips.
inline double stabilizer_meas_error_prob(std::size_t w, double p_m) {
  if (w < 1) throw std::invalid_argument("stabilizer_meas_error_prob: weight must be >= 1");
  if (!(p_m >= 0.0 && p_m <= 1.0)) throw std::invalid_argument("stabilizer_meas_error_prob: p_m outside [0, 1]");
  double total = 0.0;
  for (std::size_t j = 1; j <= w; j += 2) {
    const double log_c = std::lgamma(static_cast<double>(w) + 1) - std::lgamma(static_cast<double>(j) + 1) -
                         std::lgamma(static_cast<double>(w - j) + 1);
    total += std::exp(log_c) * std::pow(p_m, static_cast<double>(j)) * std::pow(1.0 - p_m, static_cast<double>(w - j));
  }
  return total;
}

/// A_w(p, n) = C(n, w) p^w (1 - p)^(n - w).
inline double binomial_pmf(std::size_t w, double p, std::size_t n) {
  if (w > n) return 0.0;
  if (p <= 0.0) return w == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return w == n ? 1.0 : 0.0;
  const double log_c = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(w) + 1) -
                       std::lgamma(static_cast<double>(n - w) + 1);
  return std::exp(log_c + static_cast<double>(w) * std::log(p) + static_cast<double>(n - w) * std::log1p(-p));
}

/// splitmix64: counter-based 64-bit generator, one stream per Monte Carlo trial.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform integer in [0, bound), by rejection so every platform agrees.
  std::uint64_t bounded(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded: zero bound");
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t v = (*this)();
    while (v >= limit) v = (*this)();
    return v % bound;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Seed of the stream for one (w_q, w_s, trial) sample.
inline std::uint64_t trial_stream_seed(std::uint64_t seed, std::size_t wq, std::size_t ws, std::uint64_t trial) {
  std::uint64_t h = SplitMix64::mix(seed + 0x9e3779b97f4a7c15ULL);
  h = SplitMix64::mix(h ^ (static_cast<std::uint64_t>(wq) * 0xd6e8feb86659fd93ULL));
  h = SplitMix64::mix(h ^ (static_cast<std::uint64_t>(ws) * 0xa0761d6478bd642fULL));
  return SplitMix64::mix(h ^ trial);
}

/// w distinct indices from [0, n), in selection order.
inline std::vector<std::size_t> sample_support(std::size_t n, std::size_t w, SplitMix64& rng) {
  if (w > n) throw std::invalid_argument("sample_support: weight exceeds size");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < w; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.bounded(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(w);
  return idx;
}

/// Uniform weight-w Pauli: uniform support, each letter uniform over X, Y, Z.
inline PauliOperator sample_pauli_of_weight(std::size_t n, std::size_t w, SplitMix64& rng) {
  PauliOperator p(n);
  for (std::size_t q : sample_support(n, w, rng)) p.set_letter(q, 1 + static_cast<unsigned>(rng.bounded(3)));
  return p;
}

inline BitVector sample_pattern_of_weight(std::size_t n, std::size_t w, SplitMix64& rng) {
  BitVector v(n);
  for (std::size_t i : sample_support(n, w, rng)) v.set(i);
  return v;
}

/// True when the two-step decoder fails: SM-code failure, uncorrectable
/// syndrome, or a residual that is not a stabilizer.
inline bool decoding_fails(const QdsCode& q, const LookupDecoder& decoder, const PauliOperator& data_error,
                           const BitVector& synd_error) {
  const auto res = qds_decode_two_step(q, qds_measure(q, data_error, synd_error), decoder);
  if (!res.ok()) return true;
  return classify_residual(q.base(), data_error * *res.correction) != ResidualClass::kTrivial;
}

struct CellResult {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;

  [[nodiscard]] double rate() const { return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials); }

  CellResult& operator+=(const CellResult& o) {
    trials += o.trials;
    failures += o.failures;
    return *this;
  }
  friend bool operator==(const CellResult&, const CellResult&) = default;
};

/// Failure count over `trials` uniform samples with exactly w_q data errors and
/// w_s syndrome flips. Trial i draws from its own stream, so results do not
/// depend on scheduling.
inline CellResult estimate_cell(const QdsCode& q, const LookupDecoder& decoder, std::size_t wq, std::size_t ws,
                                std::uint64_t trials, std::uint64_t seed, std::uint64_t first_trial = 0) {
  const std::size_t n = q.base().n();
  const std::size_t ns = q.num_measurements();
  if (wq > n) throw std::invalid_argument("estimate_cell: w_q exceeds number of qubits");
  if (ws > ns) throw std::invalid_argument("estimate_cell: w_s exceeds number of measurements");
  if (trials < 1) throw std::invalid_argument("estimate_cell: need at least one trial");
  CellResult out;
  for (std::uint64_t i = first_trial; i < first_trial + trials; ++i) {
    SplitMix64 rng(trial_stream_seed(seed, wq, ws, i));
    const PauliOperator e = sample_pauli_of_weight(n, wq, rng);
    const BitVector s = sample_pattern_of_weight(ns, ws, rng);
    ++out.trials;
    if (decoding_fails(q, decoder, e, s)) ++out.failures;
  }
  return out;
}

/// Parameters of the simulated instance, carried with its grid.
struct CodeMeta {
  std::string code;
  std::string sm;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t ell = 0;
  std::size_t n_s = 0;
  std::size_t t_q = 0;
  std::size_t t_s = 0;
  std::size_t extra = 0;

  friend bool operator==(const CodeMeta&, const CodeMeta&) = default;
};

inline CodeMeta describe(const QdsCode& q) {
  CodeMeta m;
  m.code = q.base().name().empty() ? "custom" : q.base().name();
  m.sm = q.sm().name();
  m.n = q.base().n();
  m.k = q.base().k();
  m.d = q.base().distance().value_or(0);
  m.ell = q.base().ell();
  m.n_s = q.num_measurements();
  m.t_q = q.base().distance() ? q.base().correctable_weight() : 0;
  m.t_s = q.sm().correctable();
  m.extra = q.extra_measurements();
  return m;
}

/// Monte Carlo results per (w_q, w_s) cell.
struct SimGrid {
  CodeMeta meta;
  std::uint64_t seed = 0;
  std::map<std::pair<std::size_t, std::size_t>, CellResult> cells;

  [[nodiscard]] bool guaranteed(std::size_t wq, std::size_t ws) const { return wq <= meta.t_q && ws <= meta.t_s; }

  /// Adds counts cell by cell; commutative and associative.
  void merge(const SimGrid& o) {
    if (!(o.meta == meta)) throw std::invalid_argument("merge: grids describe different codes");
    for (const auto& [key, cell] : o.cells) cells[key] += cell;
  }

  friend bool operator==(const SimGrid&, const SimGrid&) = default;
};

struct GridOptions {
  /// Trials for cells within one of the guaranteed region (w_q <= t_q + 1, w_s <= t_s + 1).
  std::uint64_t trials_boundary = 10'000;
  /// Trials for all other cells.
  std::uint64_t trials_far = 1'000;
  std::uint64_t seed = 0;
  /// Largest weights simulated; defaults cover every cell.
  std::optional<std::size_t> max_wq;
  std::optional<std::size_t> max_ws;
  unsigned threads = 1;
};

inline SimGrid build_grid(const QdsCode& q, const LookupDecoder& decoder, const GridOptions& opt) {
  SimGrid grid;
  grid.meta = describe(q);
  grid.seed = opt.seed;
  const std::size_t max_wq = std::min(opt.max_wq.value_or(grid.meta.n), grid.meta.n);
  const std::size_t max_ws = std::min(opt.max_ws.value_or(grid.meta.n_s), grid.meta.n_s);
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  for (std::size_t wq = 0; wq <= max_wq; ++wq) {
    for (std::size_t ws = 0; ws <= max_ws; ++ws) keys.emplace_back(wq, ws);
  }
  std::vector<CellResult> results(keys.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      const auto [wq, ws] = keys[i];
      const bool boundary = wq <= grid.meta.t_q + 1 && ws <= grid.meta.t_s + 1;
      results[i] = estimate_cell(q, decoder, wq, ws, boundary ? opt.trials_boundary : opt.trials_far, opt.seed);
    }
  };
  const unsigned threads = std::max(1U, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < keys.size(); ++i) grid.cells[keys[i]] = results[i];
  return grid;
}

/// 95% Wilson score interval for failures / trials.
inline std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials, double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct CombinedEstimate {
  double p_err = 0.0;
  /// Total prefactor mass of dropped cells; bounds their contribution.
  double truncation_mass = 0.0;
  std::size_t dropped_cells = 0;
  /// A-weighted sums of per-cell Wilson bounds (guaranteed cells count as exact zeros).
  double lower = 0.0;
  double upper = 0.0;
};

/// p_err = sum over (w_q, w_s) of A_{w_q}(p_q, n) A_{w_s}(p_s, n_s) pL(w_q, w_s).
/// Cells whose prefactor is below `truncation` are skipped; any other cell
/// must be present in the grid.
inline CombinedEstimate combine_grid(const SimGrid& grid, double p_q, double p_s, double truncation = 1e-12) {
  if (!(p_q >= 0 && p_q <= 1 && p_s >= 0 && p_s <= 1)) throw std::invalid_argument("combine_grid: probability outside [0, 1]");
  CombinedEstimate out;
  for (std::size_t wq = 0; wq <= grid.meta.n; ++wq) {
    const double aq = binomial_pmf(wq, p_q, grid.meta.n);
    for (std::size_t ws = 0; ws <= grid.meta.n_s; ++ws) {
      const double a = aq * binomial_pmf(ws, p_s, grid.meta.n_s);
      if (a == 0.0) continue;
      if (a < truncation) {
        out.truncation_mass += a;
        ++out.dropped_cells;
        continue;
      }
      const auto it = grid.cells.find({wq, ws});
      if (it == grid.cells.end()) {
        throw std::invalid_argument("combine_grid: missing cell (w_q=" + std::to_string(wq) + ", w_s=" +
                                    std::to_string(ws) + ") with prefactor " + std::to_string(a));
      }
      const CellResult& c = it->second;
      out.p_err += a * c.rate();
      if (grid.guaranteed(wq, ws) && c.failures == 0) continue;
      const auto [lo, hi] = wilson_interval(c.failures, c.trials);
      out.lower += a * lo;
      out.upper += a * hi;
    }
  }
  return out;
}

struct CurvePoint {
  double p_s = 0.0;
  double p_q = 0.0;
  CombinedEstimate estimate;
};

/// Recombines one grid at every point with p_q = ratio * p_s.
inline std::vector<CurvePoint> sweep(const SimGrid& grid, const std::vector<double>& p_points, double ratio,
                                     double truncation = 1e-12) {
  if (ratio < 0) throw std::invalid_argument("sweep: negative ratio");
  std::vector<CurvePoint> out;
  out.reserve(p_points.size());
  for (double p : p_points) {
    const double pq = ratio * p;
    if (pq > 1.0) throw std::invalid_argument("sweep: ratio pushes p_q above 1");
    out.push_back({p, pq, combine_grid(grid, pq, p, truncation)});
  }
  return out;
}

/// Builds the grid, then recombines it at every point.
inline std::vector<CurvePoint> sweep(const QdsCode& q, const LookupDecoder& decoder, const std::vector<double>& p_points,
                                     double ratio, const GridOptions& opt, double truncation = 1e-12) {
  return sweep(build_grid(q, decoder, opt), p_points, ratio, truncation);
}

/// Least-squares slope of log(p_err) against log(p_s); points with p_err <= 0 are skipped.
inline double loglog_slope(const std::vector<CurvePoint>& curve) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (const auto& pt : curve) {
    if (pt.estimate.p_err <= 0 || pt.p_s <= 0) continue;
    const double x = std::log(pt.p_s);
    const double y = std::log(pt.estimate.p_err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw std::invalid_argument("loglog_slope: need two positive points");
  const double c = static_cast<double>(count);
  return (c * sxy - sx * sy) / (c * sxx - sx * sx);
}

struct ErrorModel {
  double p_q = 0.0;
  double p_s = 0.0;
  /// Per-row flip probability from the measured operator's weight, with p_s as the per-gate rate.
  bool weight_aware = false;
};

/// Unstratified Monte Carlo: every qubit and every measurement is an
/// independent Bernoulli trial. Needed when flip rates differ per row.
inline CellResult direct_monte_carlo(const QdsCode& q, const LookupDecoder& decoder, const ErrorModel& model,
                                     std::uint64_t trials, std::uint64_t seed) {
  if (!(model.p_q >= 0 && model.p_q <= 1 && model.p_s >= 0 && model.p_s <= 1)) {
    throw std::invalid_argument("direct_monte_carlo: probability outside [0, 1]");
  }
  const std::size_t n = q.base().n();
  const std::size_t ns = q.num_measurements();
  std::vector<double> row_p(ns, model.p_s);
  if (model.weight_aware) {
    for (std::size_t i = 0; i < ns; ++i) {
      const std::size_t w = q.measured_operator(i).weight();
      row_p[i] = w == 0 ? 0.0 : stabilizer_meas_error_prob(w, model.p_s);
    }
  }
  CellResult out;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(trial_stream_seed(seed, ~std::size_t{0}, ~std::size_t{0}, t));
    PauliOperator e(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < model.p_q) e.set_letter(i, 1 + static_cast<unsigned>(rng.bounded(3)));
    }
    BitVector s(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      if (rng.uniform() < row_p[i]) s.set(i);
    }
    ++out.trials;
    if (decoding_fails(q, decoder, e, s)) ++out.failures;
  }
  return out;
}

}  // namespace qdsbch

#endif  // QDSBCH_SIM_HPP
