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

#ifndef SFC_MATRIX_HPP_
#define SFC_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "sfc/rng.hpp"

namespace sfc {

// Dense row-major float matrix. All kernels below are deterministic given
// identical inputs: plain loops, float accumulators, no threading.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols, float fill = 0.0f)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  float& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  float at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<float> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const float> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<float>& data() { return data_; }
  const std::vector<float>& data() const { return data_; }

  bool all_finite() const;

 private:
  size_t rows_, cols_;
  std::vector<float> data_;
};

// c[i][j] = sum_k a[i][k] * b[k][j], float accumulation.
Matrix matmul(const Matrix& a, const Matrix& b);

// Row-wise softmax with per-row max subtraction. Throws on non-finite input.
Matrix softmax_rows(const Matrix& m);

// Per-row normalization to zero mean / unit variance (population variance,
// eps inside the square root), then per-column affine gain/bias.
Matrix layer_norm(const Matrix& x, std::span<const float> gain,
                  std::span<const float> bias, float eps = 1e-5f);

// Entries i.i.d. uniform on [-scale, scale], reproducible for a fixed seed.
Matrix seeded_matrix(SeededRng& rng, size_t rows, size_t cols, float scale);

}  // namespace sfc

#endif  // SFC_MATRIX_HPP_
