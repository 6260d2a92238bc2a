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

// Umbrella header for the qdsbch library.

#ifndef QDSBCH_QDSBCH_HPP
#define QDSBCH_QDSBCH_HPP

#include "qdsbch/bch.hpp"
#include "qdsbch/counting.hpp"
#include "qdsbch/fields.hpp"
#include "qdsbch/linalg.hpp"
#include "qdsbch/qds.hpp"
#include "qdsbch/sim.hpp"
#include "qdsbch/stabilizer.hpp"

namespace qdsbch {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // QDSBCH_QDSBCH_HPP
