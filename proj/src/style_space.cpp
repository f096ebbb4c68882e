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

#include "sfc/style_space.hpp"

#include <utility>

#include "sfc/error.hpp"

namespace sfc {

LayerId make_layer_id(int v) {
  if (v < 1 || v > 3) throw ShapeError("layer id must be 1, 2 or 3");
  return static_cast<LayerId>(v);
}

StyleVectorSet::StyleVectorSet(size_t dim)
    : vectors_(kNumStyleVectors, dim) {}

StyleVectorSet::StyleVectorSet(Matrix vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() != kNumStyleVectors) {
    throw ShapeError("style set must hold exactly 18 vectors");
  }
  if (!vectors_.all_finite()) {
    throw ShapeError("style set entries must be finite");
  }
}

LayerSlices group_layers(const StyleVectorSet&) {
  LayerSlices out;
  for (size_t k = 0; k < kNumLayers; ++k) {
    out.ranges[k] = {k * kVectorsPerLayer, (k + 1) * kVectorsPerLayer};
  }
  return out;
}

StyleVectorSet layer_mask(const StyleVectorSet& s, LayerId k) {
  StyleVectorSet out = s;
  for (size_t i = layer_end(k); i < kNumStyleVectors; ++i) {
    for (float& v : out.vector(i)) v = 0.0f;
  }
  return out;
}

StyleVectorSet to_absolute(const StyleVectorSet& s, const AverageVector& avg) {
  if (avg.values.size() != s.dim()) {
    throw ShapeError("average vector dimension mismatch");
  }
  StyleVectorSet out = s;
  for (size_t i = 0; i < kNumStyleVectors; ++i) {
    auto row = out.vector(i);
    for (size_t j = 0; j < row.size(); ++j) row[j] += avg.values[j];
  }
  return out;
}

StyleVectorSet from_absolute(const StyleVectorSet& s,
                             const AverageVector& avg) {
  if (avg.values.size() != s.dim()) {
    throw ShapeError("average vector dimension mismatch");
  }
  StyleVectorSet out = s;
  for (size_t i = 0; i < kNumStyleVectors; ++i) {
    auto row = out.vector(i);
    for (size_t j = 0; j < row.size(); ++j) row[j] -= avg.values[j];
  }
  return out;
}

}  // namespace sfc
