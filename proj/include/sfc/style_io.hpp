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

#ifndef SFC_STYLE_IO_HPP_
#define SFC_STYLE_IO_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sfc/style_space.hpp"

namespace sfc {

// Style vector file (magic "SSV1", little-endian):
//   magic (4) | version u8 (= 1) | count u32 | style_dim u32
//   count x 18 x style_dim f32 residual style vectors
std::vector<uint8_t> serialize_style_sets(
    const std::vector<StyleVectorSet>& sets);
std::vector<StyleVectorSet> deserialize_style_sets(
    std::span<const uint8_t> bytes);

void save_style_sets(const std::vector<StyleVectorSet>& sets,
                     const std::string& path);
std::vector<StyleVectorSet> load_style_sets(const std::string& path);

}  // namespace sfc

#endif  // SFC_STYLE_IO_HPP_
