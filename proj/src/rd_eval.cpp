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

#include "sfc/rd_eval.hpp"

#include <cmath>

#include "sfc/error.hpp"

namespace sfc {

double layer_objective(LayerId k, double lambda, double cumulative_rate,
                       const DistortionBundle& d, const ObjectiveWeights& w) {
  const double structural = w.lambda_lm * d.landmark + w.lambda_sg * d.segmentation;
  const double rate = lambda * cumulative_rate;
  switch (k) {
    case LayerId::kBasic:
      return rate + structural;
    case LayerId::kMiddle:
      return rate + w.w1 * structural + w.lambda_id * d.identity;
    case LayerId::kEnhanced:
      return rate + w.w2 * structural + w.w3 * w.lambda_id * d.identity +
             w.lambda_mse * d.mse + w.lambda_lpips * d.lpips +
             w.lambda_adv * d.adversarial;
  }
  throw ConfigError("layer_objective: invalid layer id");
}

double scalable_objective(double lambda,
                          const std::array<double, kNumLayers>& cumulative_rate,
                          const std::array<DistortionBundle, kNumLayers>& d,
                          const ObjectiveWeights& w) {
  double sum = 0.0;
  for (size_t i = 0; i < kNumLayers; ++i) {
    sum += layer_objective(make_layer_id(static_cast<int>(i) + 1), lambda,
                           cumulative_rate[i], d[i], w);
  }
  return sum;
}

double mse(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size() || a.empty()) {
    throw ShapeError("mse: size mismatch or empty input");
  }
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double e = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += e * e;
  }
  return sum / static_cast<double>(a.size());
}

double feature_cosine_distance(std::span<const float> a,
                               std::span<const float> b) {
  if (a.size() != b.size() || a.empty()) {
    throw ShapeError("feature_cosine_distance: size mismatch or empty input");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw ShapeError("feature_cosine_distance: zero-norm feature vector");
  }
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

double nme(std::span<const float> predicted, std::span<const float> reference,
           size_t point_dim, double normalizer, bool euclidean) {
  if (predicted.size() != reference.size() || predicted.empty() ||
      point_dim == 0 || predicted.size() % point_dim != 0) {
    throw ShapeError("nme: inconsistent point geometry");
  }
  if (normalizer <= 0.0) throw ConfigError("nme: normalizer must be positive");
  const size_t n = predicted.size() / point_dim;
  double sum = 0.0;
  for (size_t p = 0; p < n; ++p) {
    double sq = 0.0;
    for (size_t c = 0; c < point_dim; ++c) {
      const size_t i = p * point_dim + c;
      const double e =
          static_cast<double>(predicted[i]) - static_cast<double>(reference[i]);
      sq += e * e;
    }
    sum += (euclidean ? std::sqrt(sq) : sq) / normalizer;
  }
  return sum / static_cast<double>(n);
}

double fwiou(const std::vector<std::vector<uint64_t>>& confusion) {
  const size_t n = confusion.size();
  if (n == 0) throw ShapeError("fwiou: empty confusion matrix");
  for (const auto& row : confusion) {
    if (row.size() != n) throw ShapeError("fwiou: confusion matrix not square");
  }
  // t_j: reference pixel count of class j (row sums).
  double total = 0.0;
  double weighted = 0.0;
  for (size_t j = 0; j < n; ++j) {
    uint64_t row_sum = 0, col_sum = 0;
    for (size_t i = 0; i < n; ++i) {
      row_sum += confusion[j][i];
      col_sum += confusion[i][j];
    }
    const double tj = static_cast<double>(row_sum);
    total += tj;
    const double denom =
        static_cast<double>(row_sum + col_sum - confusion[j][j]);
    if (tj > 0.0 && denom > 0.0) {
      weighted += tj * static_cast<double>(confusion[j][j]) / denom;
    }
  }
  if (total == 0.0) throw ShapeError("fwiou: no reference pixels");
  return weighted / total;
}

double mos(std::span<const double> scores) {
  if (scores.empty()) throw ShapeError("mos: no scores");
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

}  // namespace sfc
