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

#ifndef SFC_TRANSFORMER_HPP_
#define SFC_TRANSFORMER_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "sfc/entropy_model.hpp"
#include "sfc/matrix.hpp"
#include "sfc/style_space.hpp"

namespace sfc {

// Attention mask over token pairs. allow[i][j] == true lets token i attend
// to token j. The layered sequence mask allows attention only within the own
// or earlier layers, which makes decoding causal across layers.
struct SequenceMask {
  size_t tokens = 0;
  std::vector<uint8_t> allow;  // tokens x tokens, row-major

  bool allowed(size_t i, size_t j) const { return allow[i * tokens + j] != 0; }
};

// Block-lower-triangular at layer granularity: allow[i][j] iff
// layer(j) <= layer(i) under the 6/6/6 grouping.
SequenceMask layered_sequence_mask(size_t tokens = kNumStyleVectors);

struct AttentionWeights {
  Matrix wq, wk, wv, wo;  // model_dim x model_dim
  size_t heads = 4;
};

// One style transformer block (post-norm):
//   y = LN1(x + MHSA(x))
//   z = LN2(y + FFN(y))            when the FFN preserves the width
//   z = LN2(FFN(y))                when the FFN changes the width
// FFN(y) = relu(y * ffn_in + b1) * ffn_out + b2.
struct StyleBlockWeights {
  AttentionWeights attn;
  std::vector<float> ln1_gain, ln1_bias;
  Matrix ffn_in;
  std::vector<float> ffn_b1;
  Matrix ffn_out;
  std::vector<float> ffn_b2;
  std::vector<float> ln2_gain, ln2_bias;

  size_t model_dim() const { return attn.wq.rows(); }
  size_t out_dim() const { return ffn_out.cols(); }
};

// Masked multi-head self-attention. Disallowed pairs receive a -1e9 logit
// bias, which drives their softmax weight to an exact float zero.
Matrix mhsa(const Matrix& x, const AttentionWeights& w,
            const SequenceMask* mask = nullptr);

// Attention weights (softmax rows) for inspection and testing.
Matrix attention_rows(const Matrix& x, const AttentionWeights& w,
                      const SequenceMask* mask, size_t head);

Matrix style_block(const Matrix& x, const StyleBlockWeights& w,
                   const SequenceMask* mask = nullptr);

// Pre-norm cross-attention block used by the cross-layer refinement paths:
//   y = x + MHCA(LN_q(x), LN_kv(ctx))
//   z = y + FFN(LN2(y))
// Identity on x when wo and ffn_out are zero.
struct CrossBlockWeights {
  std::vector<float> lnq_gain, lnq_bias;
  std::vector<float> lnkv_gain, lnkv_bias;
  AttentionWeights attn;
  std::vector<float> ln2_gain, ln2_bias;
  Matrix ffn_in;
  std::vector<float> ffn_b1;
  Matrix ffn_out;
  std::vector<float> ffn_b2;
};

Matrix cross_block(const Matrix& x, const Matrix& context,
                   const CrossBlockWeights& w);

// 18 tokens at style_dim -> 18 tokens at hyper_dim over three unmasked style
// transformer blocks; learned positional embedding added at stack entry.
struct HyperEncoderWeights {
  Matrix pos;  // tokens x style_dim
  std::array<StyleBlockWeights, 3> blocks;
};

// Prefix of hyperprior tokens -> per-coordinate (mu, delta) at style_dim over
// three masked blocks plus two affine heads. delta = softplus(raw) + delta_min.
struct HyperDecoderWeights {
  Matrix pos;  // tokens x hyper_dim
  std::array<StyleBlockWeights, 3> blocks;
  Matrix mu_head;  // style_dim x style_dim
  std::vector<float> mu_bias;
  Matrix delta_head;
  std::vector<float> delta_bias;
};

// Refinement of layer-2 parameters from the decoded layer-1 symbols: the
// context passes one style transformer block, then separate cross-attention
// paths update the mu tokens and the delta tokens.
struct CrossRefineWeights {
  StyleBlockWeights context_block;
  CrossBlockWeights mu_path;
  CrossBlockWeights delta_path;
};

// Token-axis 1-D convolution, kernel 3, zero padding, relu.
struct ConvBlockWeights {
  std::array<Matrix, 3> taps;  // dim x dim each, for offsets -1, 0, +1
  std::vector<float> bias;
};

// Layer-3 refinement: decoded layers 1+2 are concatenated (12 tokens), fused
// by three convolutional blocks, then refined exactly as the layer-2 path.
struct CrossFuseWeights {
  std::array<ConvBlockWeights, 3> fuse;
  CrossRefineWeights refine;
};

Matrix conv_block(const Matrix& tokens, const ConvBlockWeights& w);

// Continuous hyperprior from the full set of quantized style tokens
// (dequantized to floats). Returns tokens x hyper_dim.
Matrix hyper_encode(const Matrix& quantized_styles,
                    const HyperEncoderWeights& w);

// Gaussian parameters for all tokens of layers <= upto. The input holds
// exactly the hyperprior tokens of those layers (a 6*upto prefix). The
// layered mask guarantees the result is bit-identical to processing a
// zero-filled full-length input.
GaussianParams hyper_decode(const Matrix& hyperpriors,
                            const HyperDecoderWeights& w, LayerId upto);

GaussianParams cross_refine_l2(const GaussianParams& base,
                               const Matrix& decoded_l1,
                               const CrossRefineWeights& w);

GaussianParams cross_refine_l3(const GaussianParams& base,
                               const Matrix& decoded_l1,
                               const Matrix& decoded_l2,
                               const CrossFuseWeights& w);

}  // namespace sfc

#endif  // SFC_TRANSFORMER_HPP_
