// Copyright 2026 The DCIL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace dcil {

using Rng = std::mt19937_64;

/// Independent per-component streams derived from one master seed.
enum class Stream : std::uint32_t {
  kEnv = 1,
  kActor = 2,
  kHer = 3,
  kSelection = 4,
  kInit = 5,
  kPlanner = 6,
  kBatch = 7,
};

inline Rng make_rng(std::uint64_t master_seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x9e3779b9u};
  return Rng(seq);
}

}  // namespace dcil
