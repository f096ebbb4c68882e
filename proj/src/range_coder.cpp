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

#include "sfc/range_coder.hpp"

#include <algorithm>

#include "sfc/error.hpp"

namespace sfc {
namespace {
constexpr uint32_t kRenormThreshold = 1u << 24;
}

void RangeEncoder::shift_low() {
  if (static_cast<uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    uint8_t out = cache_;
    const uint8_t carry = static_cast<uint8_t>(low_ >> 32);
    do {
      out_.push_back(static_cast<uint8_t>(out + carry));
      out = 0xFF;
    } while (--cache_count_ != 0);
    cache_ = static_cast<uint8_t>(low_ >> 24);
  }
  ++cache_count_;
  low_ = (low_ << 8) & 0xFFFFFFFFull;
}

void RangeEncoder::encode_span(uint32_t cum, uint32_t freq, uint32_t total) {
  range_ /= total;
  low_ += static_cast<uint64_t>(cum) * range_;
  range_ *= freq;
  while (range_ < kRenormThreshold) {
    shift_low();
    range_ <<= 8;
  }
}

void RangeEncoder::encode_symbol(const FrequencyTable& table, int32_t symbol) {
  if (!table.contains(symbol)) {
    throw DecodeError("encode_symbol: symbol outside table support");
  }
  const size_t idx = static_cast<size_t>(symbol - table.symbol_min);
  encode_span(table.cum[idx], table.freq[idx], table.total());
}

void RangeEncoder::encode_escape_value(const FrequencyTable& table,
                                       int32_t v) {
  const size_t esc = table.escape_index();
  encode_span(table.cum[esc], table.freq[esc], table.total());
  encode_bits(static_cast<uint32_t>(v), 32);
}

void RangeEncoder::encode_bits(uint32_t value, int nbits) {
  for (int b = nbits - 1; b >= 0; --b) {
    range_ >>= 1;
    if ((value >> b) & 1u) low_ += range_;
    while (range_ < kRenormThreshold) {
      shift_low();
      range_ <<= 8;
    }
  }
}

std::vector<uint8_t> RangeEncoder::finish() {
  for (int i = 0; i < 5; ++i) shift_low();
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> bytes) : bytes_(bytes) {
  next_byte();  // the encoder's initial cache byte, always zero
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

uint8_t RangeDecoder::next_byte() {
  if (pos_ >= bytes_.size()) {
    throw DecodeError("range decoder: truncated stream");
  }
  return bytes_[pos_++];
}

int32_t RangeDecoder::decode_symbol(const FrequencyTable& table) {
  range_ /= table.total();
  const uint32_t target =
      std::min<uint32_t>(code_ / range_, table.total() - 1);
  // cum is strictly increasing; find the slot whose [cum, cum+freq) covers
  // the target.
  const auto it =
      std::upper_bound(table.cum.begin(), table.cum.end(), target);
  if (it == table.cum.begin() || it == table.cum.end()) {
    throw DecodeError("range decoder: corrupt cumulative search");
  }
  const size_t idx = static_cast<size_t>(it - table.cum.begin()) - 1;
  code_ -= table.cum[idx] * range_;
  range_ *= table.freq[idx];
  while (range_ < kRenormThreshold) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
  }
  if (idx == table.escape_index()) {
    return static_cast<int32_t>(decode_bits(32));
  }
  return table.symbol_min + static_cast<int32_t>(idx);
}

uint32_t RangeDecoder::decode_bits(int nbits) {
  uint32_t value = 0;
  for (int b = 0; b < nbits; ++b) {
    range_ >>= 1;
    uint32_t bit = 0;
    if (code_ >= range_) {
      code_ -= range_;
      bit = 1;
    }
    value = (value << 1) | bit;
    while (range_ < kRenormThreshold) {
      code_ = (code_ << 8) | next_byte();
      range_ <<= 8;
    }
  }
  return value;
}

}  // namespace sfc
