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

#include "sfc/matrix.hpp"

#include <cmath>

#include "sfc/error.hpp"

namespace sfc {

bool Matrix::all_finite() const {
  for (float v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions do not match");
  }
  Matrix c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < a.cols(); ++k) {
      const float aik = a.at(i, k);
      if (aik == 0.0f) continue;
      for (size_t j = 0; j < b.cols(); ++j) {
        c.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return c;
}

Matrix softmax_rows(const Matrix& m) {
  if (!m.all_finite()) {
    throw ShapeError("softmax_rows: non-finite input");
  }
  Matrix out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    float mx = m.at(i, 0);
    for (size_t j = 1; j < m.cols(); ++j) mx = std::max(mx, m.at(i, j));
    float sum = 0.0f;
    for (size_t j = 0; j < m.cols(); ++j) {
      const float e = std::exp(m.at(i, j) - mx);
      out.at(i, j) = e;
      sum += e;
    }
    const float inv = 1.0f / sum;
    for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) *= inv;
  }
  return out;
}

Matrix layer_norm(const Matrix& x, std::span<const float> gain,
                  std::span<const float> bias, float eps) {
  if (gain.size() != x.cols() || bias.size() != x.cols()) {
    throw ShapeError("layer_norm: gain/bias length must equal column count");
  }
  Matrix out(x.rows(), x.cols());
  const float n = static_cast<float>(x.cols());
  for (size_t i = 0; i < x.rows(); ++i) {
    float mean = 0.0f;
    for (size_t j = 0; j < x.cols(); ++j) mean += x.at(i, j);
    mean /= n;
    float var = 0.0f;
    for (size_t j = 0; j < x.cols(); ++j) {
      const float d = x.at(i, j) - mean;
      var += d * d;
    }
    var /= n;
    const float inv = 1.0f / std::sqrt(var + eps);
    for (size_t j = 0; j < x.cols(); ++j) {
      out.at(i, j) = (x.at(i, j) - mean) * inv * gain[j] + bias[j];
    }
  }
  return out;
}

Matrix seeded_matrix(SeededRng& rng, size_t rows, size_t cols, float scale) {
  if (scale <= 0.0f) {
    throw ShapeError("seeded_matrix: scale must be positive");
  }
  Matrix m(rows, cols);
  for (float& v : m.data()) v = rng.uniform(-scale, scale);
  return m;
}

}  // namespace sfc
