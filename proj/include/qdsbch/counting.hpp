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

#ifndef QDSBCH_COUNTING_HPP
#define QDSBCH_COUNTING_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdsbch {

/// Thrown when an exhaustive enumeration would exceed its work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(what + ": requires " + std::to_string(required) + " cases, budget is " +
                           std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  [[nodiscard]] std::uint64_t required() const { return required_; }
  [[nodiscard]] std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

/// C(n, k), saturating at uint64 max; 0 when k > n.
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

/// Number of n-qubit Paulis of weight exactly w: C(n, w) * 3^w.
inline std::uint64_t pauli_count_of_weight(std::uint64_t n, std::uint64_t w) {
  std::uint64_t c = binomial_u64(n, w);
  for (std::uint64_t i = 0; i < w; ++i) c = saturating_mul(c, 3);
  return c;
}

inline std::uint64_t pauli_count_up_to_weight(std::uint64_t n, std::uint64_t w) {
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i <= w && i <= n; ++i) c = saturating_add(c, pauli_count_of_weight(n, i));
  return c;
}

inline std::uint64_t patterns_up_to_weight(std::uint64_t n, std::uint64_t w) {
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i <= w && i <= n; ++i) c = saturating_add(c, binomial_u64(n, i));
  return c;
}

/// Visits every size-k subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace qdsbch

#endif  // QDSBCH_COUNTING_HPP
