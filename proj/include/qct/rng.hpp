// Copyright 2026 The QCT Authors
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

#ifndef QCT_RNG_HPP
#define QCT_RNG_HPP

#include <cstdint>
#include <random>

namespace qct {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of stream `index` under `master`: mix64(mix64(master) + (index + 1) * golden gamma).
/// Counter-based, so trial i can be replayed without generating trials 0..i-1.
constexpr uint64_t derive_seed(uint64_t master, uint64_t index) {
    return mix64(mix64(master) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

inline Rng stream_rng(uint64_t master, uint64_t index) { return Rng(derive_seed(master, index)); }

}  // namespace qct

#endif
