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

#ifndef SFC_BITSTREAM_HPP_
#define SFC_BITSTREAM_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sfc/style_space.hpp"
#include "sfc/weights.hpp"

namespace sfc {

// Container layout (all integers little-endian):
//   magic "SFC1" (4 bytes)
//   version      (1 byte, = 1)
//   config digest (8 bytes, must match the weight file)
//   3 x { hyper_len u32, style_len u32, crc32 u32 }   -- layers 1..3
//   payloads in layer order: hyper bytes then style bytes per layer
// A truncated stream keeps the full header with zeroed table entries for the
// dropped layers, so any whole-layer prefix stays decodable.
inline constexpr size_t kStreamHeaderSize = 4 + 1 + 8 + 3 * 12;

struct LayerRates {
  uint64_t hyper_bits = 0;  // measured payload bits
  uint64_t style_bits = 0;
  double est_hyper_bits = 0.0;  // model-estimated bits
  double est_style_bits = 0.0;
  size_t escape_count = 0;

  uint64_t total_bits() const { return hyper_bits + style_bits; }
};

struct RateReport {
  std::array<LayerRates, kNumLayers> layers;
  uint64_t pixel_count = 0;

  uint64_t total_bits() const;
  uint64_t cumulative_bits(LayerId upto) const;
  double bpp() const;
  double layer_bpp(LayerId k) const;
};

struct EncodeResult {
  std::vector<uint8_t> stream;
  RateReport rates;
  bool escape_flood = false;  // > 10% escapes: model badly scaled
};

struct StreamInfo {
  uint8_t version = 0;
  uint64_t digest = 0;
  std::array<uint32_t, kNumLayers> hyper_len{};
  std::array<uint32_t, kNumLayers> style_len{};
  std::array<uint32_t, kNumLayers> crc{};

  int present_layers() const;
};

// Header-only parse; no payload decode, no checksum verification.
StreamInfo inspect(std::span<const uint8_t> stream);

EncodeResult encode(const StyleVectorSet& styles, const Weights& w);

// Residual styles for layers <= upto (dequantized symbols); later layers are
// zero-filled. Verifies digest, per-layer checksums and segment bounds.
StyleVectorSet decode(std::span<const uint8_t> stream, const Weights& w,
                      LayerId upto);

// Drops all segments above layer k and rewrites the segment table.
std::vector<uint8_t> truncate_to_layer(std::span<const uint8_t> stream,
                                       LayerId k);

// Byte-count accounting of an existing stream (no decode).
RateReport measure_rates(std::span<const uint8_t> stream,
                         uint64_t pixel_count);

// Gaussian coding parameters exactly as both codec sides derive them, for
// the encoder/decoder symmetry checks. Returned per layer <= upto.
std::vector<GaussianParams> derive_layer_params(
    const Matrix& dequantized_styles, const Matrix& dequantized_hyper,
    const Weights& w, LayerId upto);

}  // namespace sfc

#endif  // SFC_BITSTREAM_HPP_
