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

#ifndef SFC_CHECKSUM_HPP_
#define SFC_CHECKSUM_HPP_

#include <cstdint>
#include <span>

namespace sfc {

// CRC-32 (IEEE 802.3 polynomial, reflected).
uint32_t crc32(std::span<const uint8_t> data, uint32_t seed = 0);

// FNV-1a 64-bit, used for config/tensor digests and golden fixtures.
class Fnv64 {
 public:
  void update(std::span<const uint8_t> data) {
    for (uint8_t b : data) {
      state_ ^= b;
      state_ *= 0x100000001B3ull;
    }
  }
  void update_u32(uint32_t v);
  void update_f32(float v);  // hashes the raw bit pattern
  uint64_t digest() const { return state_; }

 private:
  uint64_t state_ = 0xCBF29CE484222325ull;
};

}  // namespace sfc

#endif  // SFC_CHECKSUM_HPP_
