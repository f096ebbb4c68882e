// Copyright 2026 The SFC Authors. All rights reserved.
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

#ifndef SFC_RNG_HPP_
#define SFC_RNG_HPP_

#include <cstdint>

namespace sfc {

// SplitMix64 (Steele/Lea/Flood, "Fast splittable pseudorandom number
// generators"). Pure 64-bit integer arithmetic, so identical seeds produce
// identical streams on every platform.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform float in [0, 1) with 24 bits of resolution.
  float next_unit() {
    return static_cast<float>(next_u64() >> 40) * (1.0f / 16777216.0f);
  }

  // Uniform float in [lo, hi).
  float uniform(float lo, float hi) { return lo + (hi - lo) * next_unit(); }

 private:
  uint64_t state_;
};

}  // namespace sfc

#endif  // SFC_RNG_HPP_
