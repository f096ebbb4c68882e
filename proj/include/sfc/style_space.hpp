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

#ifndef SFC_STYLE_SPACE_HPP_
#define SFC_STYLE_SPACE_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sfc/matrix.hpp"

namespace sfc {

// 18 tokens, grouped 6/6/6 into basic / middle / enhanced layers. The layer
// structure is fixed; only the per-vector dimension is configurable.
inline constexpr size_t kNumStyleVectors = 18;
inline constexpr size_t kVectorsPerLayer = 6;
inline constexpr size_t kNumLayers = 3;

// Layer id: 1 = basic, 2 = middle, 3 = enhanced.
enum class LayerId : int { kBasic = 1, kMiddle = 2, kEnhanced = 3 };

inline int layer_value(LayerId k) { return static_cast<int>(k); }
LayerId make_layer_id(int v);  // throws ShapeError when v is not in {1,2,3}

// Layer of a token index: 0-5 -> 1, 6-11 -> 2, 12-17 -> 3.
inline int layer_of_index(size_t i) {
  return static_cast<int>(i / kVectorsPerLayer) + 1;
}

// First token index of a layer and one-past-last token index of a layer.
inline size_t layer_begin(LayerId k) {
  return (static_cast<size_t>(layer_value(k)) - 1) * kVectorsPerLayer;
}
inline size_t layer_end(LayerId k) {
  return static_cast<size_t>(layer_value(k)) * kVectorsPerLayer;
}

// The 18 residual style vectors (offsets against the average vector).
class StyleVectorSet {
 public:
  explicit StyleVectorSet(size_t dim);
  explicit StyleVectorSet(Matrix vectors);  // must be 18 x dim, finite

  size_t dim() const { return vectors_.cols(); }
  const Matrix& matrix() const { return vectors_; }
  Matrix& matrix() { return vectors_; }

  std::span<const float> vector(size_t i) const { return vectors_.row(i); }
  std::span<float> vector(size_t i) { return vectors_.row(i); }

 private:
  Matrix vectors_;
};

struct AverageVector {
  std::vector<float> values;
};

struct LayerSlices {
  // Row ranges [begin, end) into the 18-token matrix, in layer order.
  std::array<std::pair<size_t, size_t>, kNumLayers> ranges;
};

// Views of the three layer groups: L1 = w0..w5, L2 = w6..w11, L3 = w12..w17.
LayerSlices group_layers(const StyleVectorSet& s);

// Zeroes every vector in layers strictly above k; layers <= k are unchanged.
StyleVectorSet layer_mask(const StyleVectorSet& s, LayerId k);

// Residual -> absolute: adds the average vector to every token.
StyleVectorSet to_absolute(const StyleVectorSet& s, const AverageVector& avg);

// Absolute -> residual: subtracts the average vector from every token.
StyleVectorSet from_absolute(const StyleVectorSet& s, const AverageVector& avg);

}  // namespace sfc

#endif  // SFC_STYLE_SPACE_HPP_
