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

#ifndef SFC_WEIGHTS_HPP_
#define SFC_WEIGHTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sfc/entropy_model.hpp"
#include "sfc/transformer.hpp"

namespace sfc {

// Codec configuration, serialized in the weight file and bound to every
// bitstream through the config digest.
struct CodecConfig {
  uint32_t tokens = 18;     // fixed by the 6/6/6 layer structure
  uint32_t style_dim = 512;
  uint32_t hyper_dim = 16;
  uint32_t heads = 4;
  int32_t style_span = 255;  // style symbol support [-span, span]
  int32_t hyper_span = 127;  // hyperprior symbol support [-span, span]
  uint32_t precision_bits = kPrecisionBits;
  uint64_t pixel_count = 1024ull * 1024ull;  // bpp denominator
  float delta_min = kDeltaMin;

  void validate() const;  // throws ConfigError
};

// Per-(token, channel) parameters of the factorized hyperprior.
struct FactorizedPriorParams {
  Matrix loc;    // tokens x hyper_dim
  Matrix scale;  // tokens x hyper_dim, >= 0.01

  LogisticParams at(size_t token, size_t channel) const {
    return {loc.at(token, channel), scale.at(token, channel)};
  }
};

struct Weights {
  CodecConfig config;
  std::vector<float> average;  // frozen average style vector, style_dim
  HyperEncoderWeights encoder;
  HyperDecoderWeights decoder;
  CrossRefineWeights cross_l2;
  CrossFuseWeights cross_l3;
  FactorizedPriorParams prior;
  uint64_t digest = 0;  // FNV-1a over serialized config + tensors
};

enum class ResidualInit {
  kZero,    // attention outputs and width-preserving FFN outputs start at 0
  kRandom,  // fully random projections
};

// Deterministic seeded weights. Identical (seed, config, init) produce
// byte-identical weight files.
Weights generate_weights(uint64_t seed, const CodecConfig& config,
                         ResidualInit init = ResidualInit::kZero);

std::vector<uint8_t> serialize_weights(const Weights& w);
Weights deserialize_weights(std::span<const uint8_t> bytes);

void save_weights(const Weights& w, const std::string& path);
Weights load_weights(const std::string& path);

}  // namespace sfc

#endif  // SFC_WEIGHTS_HPP_
