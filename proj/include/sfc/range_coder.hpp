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

#ifndef SFC_RANGE_CODER_HPP_
#define SFC_RANGE_CODER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "sfc/entropy_model.hpp"

namespace sfc {

// Byte-oriented range coder, stream format version 1.
//
// Encoder state: 64-bit low (bit 32 carries), 32-bit range initialized to
// 0xFFFFFFFF. Coding step: range /= total; low += cum * range;
// range *= freq; renormalize one byte at a time while range < 2^24.
// Carries propagate through a cache byte plus a pending-0xFF counter.
// finish() performs five renormalization shifts; the first output byte is
// always zero and is part of the stream. The decoder mirrors the
// renormalization timing exactly, priming its 32-bit code window from the
// first five bytes.
//
// Out-of-support values are coded as the table's reserved escape slot
// followed by 32 raw bits (two's complement), so any int32 round-trips.
class RangeEncoder {
 public:
  // Symbol must lie within the table support.
  void encode_symbol(const FrequencyTable& table, int32_t symbol);

  // Escape slot + 32 raw bits; v may be any 32-bit integer.
  void encode_escape_value(const FrequencyTable& table, int32_t v);

  // Raw bypass bits, most significant first.
  void encode_bits(uint32_t value, int nbits);

  // Flushes the tail (5 bytes) and returns the stream.
  std::vector<uint8_t> finish();

  size_t bytes_emitted() const { return out_.size(); }

 private:
  void encode_span(uint32_t cum, uint32_t freq, uint32_t total);
  void shift_low();

  uint64_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint8_t cache_ = 0;
  uint64_t cache_count_ = 1;
  std::vector<uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const uint8_t> bytes);

  // Decodes one symbol against the table; escape values are resolved
  // transparently (the 32 raw bits are consumed here).
  int32_t decode_symbol(const FrequencyTable& table);

  uint32_t decode_bits(int nbits);

  size_t bytes_consumed() const { return pos_; }

 private:
  uint8_t next_byte();

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint32_t code_ = 0;
};

}  // namespace sfc

#endif  // SFC_RANGE_CODER_HPP_
