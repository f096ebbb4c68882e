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

#ifndef SFC_RD_EVAL_HPP_
#define SFC_RD_EVAL_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sfc/style_space.hpp"

namespace sfc {

// Distortion terms entering the per-layer objectives. The basic layer uses
// the landmark and segmentation terms, the middle layer adds identity, the
// enhanced layer adds the pixel-level terms.
struct DistortionBundle {
  double landmark = 0.0;      // facial-structure surrogate
  double segmentation = 0.0;  // region-layout surrogate
  double identity = 0.0;      // feature cosine distance
  double mse = 0.0;
  double lpips = 0.0;
  double adversarial = 0.0;
};

struct ObjectiveWeights {
  double w1 = 1.5;  // structural re-weighting in the middle-layer objective
  double w2 = 2.0;  // structural re-weighting in the enhanced-layer objective
  double w3 = 1.5;  // identity re-weighting in the enhanced-layer objective
  double lambda_lm = 1.0;
  double lambda_sg = 1.0;
  double lambda_id = 0.5;
  double lambda_mse = 1.0;
  double lambda_lpips = 0.8;
  double lambda_adv = 0.01;
};

// Rate-distortion objective of one layer. `cumulative_rate` is the bpp of
// all layers up to and including k (R1, R1+R2, or R1+R2+R3).
double layer_objective(LayerId k, double lambda, double cumulative_rate,
                       const DistortionBundle& d,
                       const ObjectiveWeights& w = {});

// Sum of the three layer objectives at their cumulative rates.
double scalable_objective(double lambda,
                          const std::array<double, kNumLayers>& cumulative_rate,
                          const std::array<DistortionBundle, kNumLayers>& d,
                          const ObjectiveWeights& w = {});

// Mean squared error over two equally sized value arrays.
double mse(std::span<const float> a, std::span<const float> b);

// 1 - cosine similarity; identity-preservation surrogate on feature vectors.
double feature_cosine_distance(std::span<const float> a,
                               std::span<const float> b);

// Normalized mean error over landmark points. Points are flattened
// (point_dim coordinates each); per point the squared Euclidean distance
// (or, with euclidean = true, the plain distance) is divided by `normalizer`
// and the results are averaged.
double nme(std::span<const float> predicted, std::span<const float> reference,
           size_t point_dim, double normalizer, bool euclidean = false);

// Frequency-weighted intersection-over-union from a square confusion matrix
// (rows = reference class, columns = predicted class). Classes absent from
// the reference contribute zero.
double fwiou(const std::vector<std::vector<uint64_t>>& confusion);

// Mean opinion score: plain average of the raw scores.
double mos(std::span<const double> scores);

}  // namespace sfc

#endif  // SFC_RD_EVAL_HPP_
