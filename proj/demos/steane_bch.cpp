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

// Builds the Steane code protected by a shortened [21,6,7] BCH syndrome
// code, then corrects one data error and three measurement flips at once.

#include <iostream>

#include "qdsbch/qdsbch.hpp"

int main() {
  using namespace qdsbch;

  const StabilizerCode steane = steane_code();
  const QdsCode q(steane, bch_sm(steane.ell(), 3));
  const auto& bch = dynamic_cast<const BchSyndromeCode&>(q.sm()).code();

  std::cout << "stabilizer code: [[" << steane.n() << "," << steane.k() << "," << *steane.distance() << "]]\n";
  std::cout << "syndrome code:   " << bch.parameters() << " g=" << bch.generator_polynomial().to_hex() << '\n';
  std::cout << "measurements:    " << q.num_measurements() << " (" << q.extra_measurements() << " extra)\n\n";
  for (std::size_t i = 0; i < q.num_measurements(); ++i) std::cout << "  " << q.measured_operator(i).to_string() << '\n';

  const PauliOperator error = pauli_parse("IIIIYII");
  BitVector flips(q.num_measurements());
  for (std::size_t i : {2U, 9U, 17U}) flips.set(i);

  const LookupDecoder decoder = lookup_decoder_build(steane, 1);
  const BitVector outcome = qds_measure(q, error, flips);
  const TwoStepResult res = qds_decode_two_step(q, outcome, decoder);

  std::cout << "\nerror " << error.to_string() << ", flipped outcomes 2 9 17\n";
  std::cout << "measured   " << outcome.to_string() << '\n';
  if (!res.ok()) {
    std::cout << "decoding failed\n";
    return 1;
  }
  std::cout << "syndrome   " << res.syndrome->to_string() << '\n';
  std::cout << "correction " << res.correction->to_string() << '\n';
  return *res.correction == error ? 0 : 1;
}
