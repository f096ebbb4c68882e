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

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "sfc/error.hpp"

namespace {

// Draws one symbol from a frequency table (in-support part only).
int32_t draw_symbol(const sfc::FrequencyTable& t, sfc::SeededRng& rng) {
  const uint32_t r =
      static_cast<uint32_t>(rng.next_u64() % (t.total() - 1));  // skip escape
  for (size_t i = 0; i < t.support_size(); ++i) {
    if (r < t.cum[i + 1]) return t.symbol_min + static_cast<int32_t>(i);
  }
  return t.symbol_max();
}

}  // namespace

TEST_CASE("range coder round-trips 100k symbols across varied tables") {
  sfc::SeededRng rng(2024);
  std::vector<sfc::FrequencyTable> tables;
  for (float delta : {0.05f, 0.4f, 1.0f, 3.0f, 9.0f}) {
    tables.push_back(sfc::build_frequency_table(
        sfc::gaussian_pmf(-0.8f, delta, -40, 40), -40));
  }

  const size_t n = 100000;
  std::vector<int32_t> symbols(n);
  std::vector<size_t> which(n);
  sfc::RangeEncoder enc;
  for (size_t i = 0; i < n; ++i) {
    which[i] = rng.next_u64() % tables.size();
    symbols[i] = draw_symbol(tables[which[i]], rng);
    enc.encode_symbol(tables[which[i]], symbols[i]);
  }
  const std::vector<uint8_t> stream = enc.finish();
  CHECK(stream.front() == 0);  // initial cache byte

  sfc::RangeDecoder dec(stream);
  for (size_t i = 0; i < n; ++i) {
    REQUIRE(dec.decode_symbol(tables[which[i]]) == symbols[i]);
  }
}

TEST_CASE("escape path round-trips arbitrary 32-bit values") {
  const sfc::FrequencyTable t =
      sfc::build_frequency_table(sfc::gaussian_pmf(0.0f, 1.0f, -8, 8), -8);
  const std::vector<int32_t> values = {
      9, -9, 1000, -123456, INT32_MAX, INT32_MIN, 0x7FFFFFFE, -2147483647};
  sfc::RangeEncoder enc;
  for (int32_t v : values) {
    CHECK(!t.contains(v));
    enc.encode_escape_value(t, v);
  }
  enc.encode_symbol(t, 3);  // normal symbol after escapes
  const auto stream = enc.finish();
  sfc::RangeDecoder dec(stream);
  for (int32_t v : values) CHECK(dec.decode_symbol(t) == v);
  CHECK(dec.decode_symbol(t) == 3);
}

TEST_CASE("raw bit bypass round-trips") {
  sfc::SeededRng rng(17);
  std::vector<std::pair<uint32_t, int>> items;
  sfc::RangeEncoder enc;
  for (int i = 0; i < 2000; ++i) {
    const int nbits = 1 + static_cast<int>(rng.next_u64() % 32);
    const uint32_t v =
        nbits == 32 ? static_cast<uint32_t>(rng.next_u64())
                    : static_cast<uint32_t>(rng.next_u64()) & ((1u << nbits) - 1);
    items.emplace_back(v, nbits);
    enc.encode_bits(v, nbits);
  }
  const auto stream = enc.finish();
  sfc::RangeDecoder dec(stream);
  for (const auto& [v, nbits] : items) CHECK(dec.decode_bits(nbits) == v);
}

TEST_CASE("coded size stays within the entropy bound plus flush slack") {
  sfc::SeededRng rng(99);
  const sfc::FrequencyTable t = sfc::build_frequency_table(
      sfc::gaussian_pmf(2.5f, 1.7f, -30, 30), -30);
  const size_t n = 50000;
  double est_bits = 0.0;
  sfc::RangeEncoder enc;
  for (size_t i = 0; i < n; ++i) {
    const int32_t s = draw_symbol(t, rng);
    enc.encode_symbol(t, s);
    est_bits -= std::log2(static_cast<double>(
                    t.freq[static_cast<size_t>(s - t.symbol_min)]) /
                static_cast<double>(t.total()));
  }
  const auto stream = enc.finish();
  const double measured = static_cast<double>(stream.size()) * 8.0;
  CHECK(measured <= est_bits + 64.0);
  // Sanity: not wildly above the source entropy either.
  CHECK(measured >= est_bits * 0.99);
}

TEST_CASE("encoding a symbol outside the support is an error") {
  const sfc::FrequencyTable t =
      sfc::build_frequency_table(std::vector<double>{0.5, 0.5}, 0);
  sfc::RangeEncoder enc;
  CHECK_THROWS_AS(enc.encode_symbol(t, 2), sfc::DecodeError);
}

TEST_CASE("decoder detects truncated streams") {
  const sfc::FrequencyTable t = sfc::build_frequency_table(
      sfc::gaussian_pmf(0.0f, 2.0f, -20, 20), -20);
  sfc::SeededRng rng(5);
  sfc::RangeEncoder enc;
  for (int i = 0; i < 1000; ++i) enc.encode_symbol(t, draw_symbol(t, rng));
  auto stream = enc.finish();
  stream.resize(4);  // shorter than the 5-byte primer
  CHECK_THROWS_AS(sfc::RangeDecoder dec(stream), sfc::DecodeError);

  sfc::RangeEncoder enc2;
  for (int i = 0; i < 1000; ++i) enc2.encode_symbol(t, draw_symbol(t, rng));
  auto stream2 = enc2.finish();
  stream2.resize(stream2.size() / 2);
  sfc::RangeDecoder dec(stream2);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 1000; ++i) (void)dec.decode_symbol(t);
      }(),
      sfc::DecodeError);
}
