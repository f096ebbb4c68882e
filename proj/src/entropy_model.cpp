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

#include "sfc/entropy_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sfc/error.hpp"

namespace sfc {
namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// Upper tail of the standard normal, accurate for large positive x.
double normal_survival(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double logistic_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double gaussian_bin_raw(double mu, double delta, int32_t k) {
  const double lo = (k - 0.5 - mu) / delta;
  const double hi = (k + 0.5 - mu) / delta;
  if (lo >= 0.0) return normal_survival(lo) - normal_survival(hi);
  if (hi <= 0.0) return normal_survival(-hi) - normal_survival(-lo);
  return 1.0 - normal_survival(-lo) - normal_survival(hi);
}

double logistic_bin_raw(double loc, double scale, int32_t k) {
  const double lo = (k - 0.5 - loc) / scale;
  const double hi = (k + 0.5 - loc) / scale;
  if (lo >= 0.0) return logistic_sigmoid(-lo) - logistic_sigmoid(-hi);
  return logistic_sigmoid(hi) - logistic_sigmoid(lo);
}

}  // namespace

int32_t quantize_value(float x) {
  if (!std::isfinite(x)) throw ShapeError("quantize: non-finite input");
  const double r = std::round(static_cast<double>(x));  // ties away from zero
  constexpr double kLimit = 2147483647.0;
  if (r > kLimit || r < -kLimit - 1.0) {
    throw ShapeError("quantize: value exceeds 32-bit symbol range");
  }
  return static_cast<int32_t>(r);
}

std::vector<int32_t> quantize(std::span<const float> x) {
  std::vector<int32_t> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = quantize_value(x[i]);
  return out;
}

std::vector<float> noise_relax(std::span<const float> x, SeededRng& rng) {
  std::vector<float> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw ShapeError("noise_relax: non-finite input");
    out[i] = x[i] + (rng.next_unit() - 0.5f);
  }
  return out;
}

double gaussian_bin_prob(float mu, float delta, int32_t k) {
  const double d = std::max<double>(delta, kDeltaMin);
  return std::max(gaussian_bin_raw(mu, d, k), kProbFloor);
}

double logistic_bin_prob(const LogisticParams& p, int32_t k) {
  const double s = std::max<double>(p.scale, 0.01);
  return std::max(logistic_bin_raw(p.loc, s, k), kProbFloor);
}

std::vector<double> gaussian_pmf(float mu, float delta, int32_t symbol_min,
                                 int32_t symbol_max) {
  const double d = std::max<double>(delta, kDeltaMin);
  const size_t n = static_cast<size_t>(symbol_max - symbol_min + 1);
  std::vector<double> pmf(n, kProbFloor);
  // Bins beyond 7.5 sigma of the mean fall under the probability floor, so
  // only evaluate the CDF inside that window.
  const int32_t margin = static_cast<int32_t>(std::ceil(7.5 * d)) + 2;
  const int32_t lo = std::max<int64_t>(symbol_min, quantize_value(mu) - margin);
  const int32_t hi = std::min<int64_t>(symbol_max, quantize_value(mu) + margin);
  for (int32_t k = lo; k <= hi; ++k) {
    pmf[static_cast<size_t>(k - symbol_min)] =
        std::max(gaussian_bin_raw(mu, d, k), kProbFloor);
  }
  return pmf;
}

std::vector<double> logistic_pmf(const LogisticParams& p, int32_t symbol_min,
                                 int32_t symbol_max) {
  const double s = std::max<double>(p.scale, 0.01);
  const size_t n = static_cast<size_t>(symbol_max - symbol_min + 1);
  std::vector<double> pmf(n, kProbFloor);
  const int32_t margin = static_cast<int32_t>(std::ceil(30.0 * s)) + 2;
  const int32_t center = quantize_value(p.loc);
  const int32_t lo = std::max<int64_t>(symbol_min, center - margin);
  const int32_t hi = std::min<int64_t>(symbol_max, center + margin);
  for (int32_t k = lo; k <= hi; ++k) {
    pmf[static_cast<size_t>(k - symbol_min)] =
        std::max(logistic_bin_raw(p.loc, s, k), kProbFloor);
  }
  return pmf;
}

double FrequencyTable::probability(int32_t symbol) const {
  if (!contains(symbol)) throw DecodeError("symbol outside table support");
  const double denom = static_cast<double>(1u << precision_bits);
  return freq[static_cast<size_t>(symbol - symbol_min)] / denom;
}

FrequencyTable build_frequency_table(std::span<const double> pmf,
                                     int32_t symbol_min,
                                     uint32_t precision_bits) {
  const size_t n = pmf.size();
  if (n == 0) throw ConfigError("frequency table: empty pmf");
  if (precision_bits < 8 || precision_bits > 24) {
    throw ConfigError("frequency table: precision out of range");
  }
  const uint64_t target = 1ull << precision_bits;
  if (n > target) {
    throw ConfigError("frequency table: support larger than 2^precision");
  }

  double sum = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0)) throw ShapeError("frequency table: negative pmf entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-3) {
    throw ShapeError("frequency table: pmf does not sum to 1");
  }

  FrequencyTable t;
  t.symbol_min = symbol_min;
  t.precision_bits = precision_bits;
  t.freq.resize(n + 1);

  // Largest-remainder apportionment of `target` units.
  std::vector<double> rem(n);
  uint64_t assigned = 0;
  for (size_t i = 0; i < n; ++i) {
    const double share = pmf[i] / sum * static_cast<double>(target);
    const double fl = std::floor(share);
    t.freq[i] = static_cast<uint32_t>(fl);
    rem[i] = share - fl;
    assigned += t.freq[i];
  }
  size_t leftover = static_cast<size_t>(target - assigned);
  if (leftover > 0) {
    std::vector<uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    const size_t d = std::min(leftover, n);
    std::nth_element(idx.begin(), idx.begin() + (d - 1), idx.end(),
                     [&](uint32_t a, uint32_t b) {
                       if (rem[a] != rem[b]) return rem[a] > rem[b];
                       return a < b;
                     });
    for (size_t i = 0; i < d; ++i) t.freq[idx[i]] += 1;
    leftover -= d;
    // leftover > n only when every remainder was hit once already; spread
    // the rest round-robin from the lowest index (cannot happen for a
    // normalized pmf, kept for safety).
    for (size_t i = 0; leftover > 0; i = (i + 1) % n, --leftover) {
      t.freq[i] += 1;
    }
  }

  // Every symbol must stay codable: bump zeros to 1, then take the surplus
  // back from the highest-probability symbols (lowest index on ties).
  uint64_t surplus = 0;
  for (size_t i = 0; i < n; ++i) {
    if (t.freq[i] == 0) {
      t.freq[i] = 1;
      ++surplus;
    }
  }
  while (surplus > 0) {
    size_t best = n;
    for (size_t i = 0; i < n; ++i) {
      if (t.freq[i] > 1 && (best == n || pmf[i] > pmf[best])) best = i;
    }
    if (best == n) {
      // All frequencies are 1: the support fills the whole precision budget.
      throw ConfigError("frequency table: support too dense for precision");
    }
    const uint64_t take = std::min<uint64_t>(surplus, t.freq[best] - 1);
    t.freq[best] -= static_cast<uint32_t>(take);
    surplus -= take;
  }

  t.freq[n] = 1;  // escape slot
  t.cum.resize(n + 2);
  t.cum[0] = 0;
  for (size_t i = 0; i <= n; ++i) t.cum[i + 1] = t.cum[i] + t.freq[i];
  return t;
}

double estimate_bits(std::span<const int32_t> symbols,
                     const std::function<double(int32_t)>& pmf_provider) {
  double bits = 0.0;
  for (int32_t s : symbols) {
    const double p = pmf_provider(s);
    if (!(p > 0.0)) {
      throw DecodeError("estimate_bits: zero-probability symbol");
    }
    bits -= std::log2(p);
  }
  return bits;
}

}  // namespace sfc
