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

#include <cstring>
#include <fstream>

#include "sfc/error.hpp"

namespace sfc {
namespace {

constexpr char kMagic[4] = {'S', 'S', 'V', '1'};
constexpr uint8_t kVersion = 1;

void put_u32(std::vector<uint8_t>& b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
uint32_t get_u32(std::span<const uint8_t> b, size_t off) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t{b[off + i]} << (8 * i);
  return v;
}

}  // namespace

std::vector<uint8_t> serialize_style_sets(
    const std::vector<StyleVectorSet>& sets) {
  if (sets.empty()) throw FormatError("style file: no sets to write");
  const size_t dim = sets[0].dim();
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  put_u32(out, static_cast<uint32_t>(sets.size()));
  put_u32(out, static_cast<uint32_t>(dim));
  for (const auto& s : sets) {
    if (s.dim() != dim) {
      throw ShapeError("style file: mixed vector dimensions");
    }
    for (float v : s.matrix().data()) {
      uint32_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      put_u32(out, bits);
    }
  }
  return out;
}

std::vector<StyleVectorSet> deserialize_style_sets(
    std::span<const uint8_t> bytes) {
  if (bytes.size() < 13 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError("style file: bad magic");
  }
  if (bytes[4] != kVersion) {
    throw FormatError("style file: unsupported version");
  }
  const uint32_t count = get_u32(bytes, 5);
  const uint32_t dim = get_u32(bytes, 9);
  if (count == 0 || dim == 0) throw FormatError("style file: empty geometry");
  const size_t need =
      13 + static_cast<size_t>(count) * kNumStyleVectors * dim * 4;
  if (bytes.size() != need) throw FormatError("style file: size mismatch");

  std::vector<StyleVectorSet> sets;
  sets.reserve(count);
  size_t off = 13;
  for (uint32_t s = 0; s < count; ++s) {
    Matrix m(kNumStyleVectors, dim);
    for (float& v : m.data()) {
      const uint32_t bits = get_u32(bytes, off);
      std::memcpy(&v, &bits, sizeof(v));
      off += 4;
    }
    sets.emplace_back(std::move(m));
  }
  return sets;
}

void save_style_sets(const std::vector<StyleVectorSet>& sets,
                     const std::string& path) {
  const auto bytes = serialize_style_sets(sets);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FormatError("style file: cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw FormatError("style file: write failure: " + path);
}

std::vector<StyleVectorSet> load_style_sets(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("style file: cannot open: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  return deserialize_style_sets(bytes);
}

}  // namespace sfc
