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

#ifndef SFC_ENTROPY_MODEL_HPP_
#define SFC_ENTROPY_MODEL_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sfc/rng.hpp"

namespace sfc {

// Probability floor for any integer bin, and the std-dev floor of the
// conditional Gaussian. Prevent zero-frequency coder stalls and degenerate
// bins.
inline constexpr double kProbFloor = 1.0 / (1 << 20);  // 2^-20
inline constexpr float kDeltaMin = 0.01f;

// Default fixed-point precision of frequency tables.
inline constexpr uint32_t kPrecisionBits = 16;

// Per-coordinate conditional Gaussian parameters (mean, std-dev).
struct GaussianParams {
  std::vector<float> mu;
  std::vector<float> delta;  // every entry >= kDeltaMin
};

// One coordinate of the factorized prior: a discretized logistic.
struct LogisticParams {
  float loc;
  float scale;  // >= 0.01
};

// Round-to-nearest, ties away from zero. Values may fall outside the model
// support; the coder handles those through the escape path, never by
// clamping.
int32_t quantize_value(float x);
std::vector<int32_t> quantize(std::span<const float> x);

// x + u with u i.i.d. uniform on [-0.5, 0.5). Training-time relaxation of
// rounding.
std::vector<float> noise_relax(std::span<const float> x, SeededRng& rng);

// P(symbol == k) under N(mu, delta^2) integrated over [k-1/2, k+1/2],
// clamped below at kProbFloor.
double gaussian_bin_prob(float mu, float delta, int32_t k);

// Same for the discretized logistic prior.
double logistic_bin_prob(const LogisticParams& p, int32_t k);

// Fixed-point pmf over a contiguous integer support plus one reserved escape
// slot (always frequency 1, last entry). The support frequencies sum to
// exactly 2^precision_bits; the coder total is 2^precision_bits + 1.
struct FrequencyTable {
  int32_t symbol_min = 0;
  uint32_t precision_bits = kPrecisionBits;
  std::vector<uint32_t> freq;  // support symbols then the escape slot
  std::vector<uint32_t> cum;   // prefix sums, size freq.size() + 1

  uint32_t total() const { return cum.back(); }
  size_t escape_index() const { return freq.size() - 1; }
  size_t support_size() const { return freq.size() - 1; }
  int32_t symbol_max() const {
    return symbol_min + static_cast<int32_t>(support_size()) - 1;
  }
  bool contains(int32_t symbol) const {
    return symbol >= symbol_min && symbol <= symbol_max();
  }
  // Probability of an in-support symbol as freq / 2^precision_bits.
  double probability(int32_t symbol) const;
};

// Largest-remainder apportionment of the pmf onto 2^precision_bits integer
// frequencies (each >= 1); residual surpluses from the min-1 bumps are taken
// from the highest-frequency symbols, ties broken toward the lowest symbol
// index. Deterministic: encoder and decoder rebuild identical tables from the
// same pmf.
FrequencyTable build_frequency_table(std::span<const double> pmf,
                                     int32_t symbol_min,
                                     uint32_t precision_bits = kPrecisionBits);

// Sum of -log2 p(symbol) under a caller-supplied pmf. Throws on
// zero-probability symbols (indicates a clamping bug upstream).
double estimate_bits(std::span<const int32_t> symbols,
                     const std::function<double(int32_t)>& pmf_provider);

// Gaussian / logistic pmfs over a table support window, floored at
// kProbFloor. Shared by the rate estimator and the table builder so encoder
// and decoder agree bit-for-bit.
std::vector<double> gaussian_pmf(float mu, float delta, int32_t symbol_min,
                                 int32_t symbol_max);
std::vector<double> logistic_pmf(const LogisticParams& p, int32_t symbol_min,
                                 int32_t symbol_max);

}  // namespace sfc

#endif  // SFC_ENTROPY_MODEL_HPP_
