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

#include "sfc/style_io.hpp"

#include "doctest.h"
#include "sfc/error.hpp"
#include "sfc/rng.hpp"

namespace {

std::vector<sfc::StyleVectorSet> sample_sets(size_t count, size_t dim) {
  sfc::SeededRng rng(400 + count);
  std::vector<sfc::StyleVectorSet> sets;
  for (size_t s = 0; s < count; ++s) {
    sfc::Matrix m(sfc::kNumStyleVectors, dim);
    for (float& v : m.data()) v = rng.uniform(-7.0f, 7.0f);
    sets.emplace_back(std::move(m));
  }
  return sets;
}

}  // namespace

TEST_CASE("style files round-trip byte-identically") {
  const auto sets = sample_sets(3, 20);
  const auto bytes = sfc::serialize_style_sets(sets);
  const auto back = sfc::deserialize_style_sets(bytes);
  REQUIRE(back.size() == 3);
  for (size_t s = 0; s < 3; ++s) {
    CHECK(back[s].matrix().data() == sets[s].matrix().data());
  }
  CHECK(sfc::serialize_style_sets(back) == bytes);
}

TEST_CASE("style file validation") {
  CHECK_THROWS_AS(sfc::serialize_style_sets({}), sfc::FormatError);

  auto bytes = sfc::serialize_style_sets(sample_sets(2, 8));
  auto bad_magic = bytes;
  bad_magic[1] = 'X';
  CHECK_THROWS_AS(sfc::deserialize_style_sets(bad_magic), sfc::FormatError);

  auto clipped = bytes;
  clipped.resize(clipped.size() - 4);
  CHECK_THROWS_AS(sfc::deserialize_style_sets(clipped), sfc::FormatError);

  auto padded = bytes;
  padded.push_back(0);
  CHECK_THROWS_AS(sfc::deserialize_style_sets(padded), sfc::FormatError);
}
