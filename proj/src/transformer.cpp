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

#include "sfc/transformer.hpp"

#include <cmath>

#include "sfc/error.hpp"

namespace sfc {
namespace {

// Large negative logit bias for disallowed pairs. exp() of anything this far
// below the row maximum underflows to an exact float zero, so masked tokens
// contribute nothing, bit-for-bit.
constexpr float kMaskBias = -1e9f;

float softplus(float x) {
  if (x > 20.0f) return x;
  return std::log1p(std::exp(x));
}

Matrix add_rows(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] += b.data()[i];
  }
  return out;
}

// relu(x * ffn_in + b1) * ffn_out + b2
Matrix ffn_forward(const Matrix& x, const StyleBlockWeights& w) {
  Matrix h = matmul(x, w.ffn_in);
  for (size_t i = 0; i < h.rows(); ++i) {
    auto row = h.row(i);
    for (size_t j = 0; j < row.size(); ++j) {
      row[j] = std::max(row[j] + w.ffn_b1[j], 0.0f);
    }
  }
  Matrix out = matmul(h, w.ffn_out);
  for (size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    for (size_t j = 0; j < row.size(); ++j) row[j] += w.ffn_b2[j];
  }
  return out;
}

Matrix head_logits(const Matrix& q, const Matrix& k, const SequenceMask* mask,
                   size_t head, size_t head_dim) {
  const size_t tq = q.rows();
  const size_t tk = k.rows();
  const size_t off = head * head_dim;
  const float inv_sqrt_d = 1.0f / std::sqrt(static_cast<float>(head_dim));
  Matrix logits(tq, tk);
  for (size_t i = 0; i < tq; ++i) {
    for (size_t j = 0; j < tk; ++j) {
      float dot = 0.0f;
      for (size_t d = 0; d < head_dim; ++d) {
        dot += q.at(i, off + d) * k.at(j, off + d);
      }
      float v = dot * inv_sqrt_d;
      if (mask && !mask->allowed(i, j)) v += kMaskBias;
      logits.at(i, j) = v;
    }
  }
  return logits;
}

// Shared core of self- and cross-attention: q_src projects the queries,
// kv_src the keys/values.
Matrix attention(const Matrix& q_src, const Matrix& kv_src,
                 const AttentionWeights& w, const SequenceMask* mask) {
  const size_t dim = w.wq.rows();
  if (q_src.cols() != dim || kv_src.cols() != dim) {
    throw ShapeError("attention: token dim does not match weights");
  }
  if (w.heads == 0 || dim % w.heads != 0) {
    throw ShapeError("attention: heads must divide model dim");
  }
  const size_t head_dim = dim / w.heads;
  const Matrix q = matmul(q_src, w.wq);
  const Matrix k = matmul(kv_src, w.wk);
  const Matrix v = matmul(kv_src, w.wv);
  Matrix concat(q_src.rows(), dim);
  for (size_t h = 0; h < w.heads; ++h) {
    const Matrix a = softmax_rows(head_logits(q, k, mask, h, head_dim));
    const size_t off = h * head_dim;
    for (size_t i = 0; i < a.rows(); ++i) {
      for (size_t d = 0; d < head_dim; ++d) {
        float acc = 0.0f;
        for (size_t j = 0; j < a.cols(); ++j) {
          acc += a.at(i, j) * v.at(j, off + d);
        }
        concat.at(i, off + d) = acc;
      }
    }
  }
  return matmul(concat, w.wo);
}

Matrix rows_as_matrix(std::span<const float> flat, size_t rows, size_t cols) {
  Matrix m(rows, cols);
  std::copy(flat.begin(), flat.end(), m.data().begin());
  return m;
}

}  // namespace

SequenceMask layered_sequence_mask(size_t tokens) {
  SequenceMask m;
  m.tokens = tokens;
  m.allow.resize(tokens * tokens);
  for (size_t i = 0; i < tokens; ++i) {
    for (size_t j = 0; j < tokens; ++j) {
      m.allow[i * tokens + j] = layer_of_index(j) <= layer_of_index(i) ? 1 : 0;
    }
  }
  return m;
}

Matrix mhsa(const Matrix& x, const AttentionWeights& w,
            const SequenceMask* mask) {
  if (mask && mask->tokens != x.rows()) {
    throw ShapeError("mhsa: mask size does not match token count");
  }
  return attention(x, x, w, mask);
}

Matrix attention_rows(const Matrix& x, const AttentionWeights& w,
                      const SequenceMask* mask, size_t head) {
  const size_t head_dim = w.wq.rows() / w.heads;
  const Matrix q = matmul(x, w.wq);
  const Matrix k = matmul(x, w.wk);
  return softmax_rows(head_logits(q, k, mask, head, head_dim));
}

Matrix style_block(const Matrix& x, const StyleBlockWeights& w,
                   const SequenceMask* mask) {
  const Matrix y =
      layer_norm(add_rows(x, mhsa(x, w.attn, mask)), w.ln1_gain, w.ln1_bias);
  const Matrix f = ffn_forward(y, w);
  if (w.out_dim() == w.model_dim()) {
    return layer_norm(add_rows(y, f), w.ln2_gain, w.ln2_bias);
  }
  return layer_norm(f, w.ln2_gain, w.ln2_bias);
}

Matrix cross_block(const Matrix& x, const Matrix& context,
                   const CrossBlockWeights& w) {
  const Matrix qn = layer_norm(x, w.lnq_gain, w.lnq_bias);
  const Matrix kvn = layer_norm(context, w.lnkv_gain, w.lnkv_bias);
  const Matrix y = add_rows(x, attention(qn, kvn, w.attn, nullptr));
  const Matrix yn = layer_norm(y, w.ln2_gain, w.ln2_bias);
  Matrix h = matmul(yn, w.ffn_in);
  for (size_t i = 0; i < h.rows(); ++i) {
    auto row = h.row(i);
    for (size_t j = 0; j < row.size(); ++j) {
      row[j] = std::max(row[j] + w.ffn_b1[j], 0.0f);
    }
  }
  Matrix f = matmul(h, w.ffn_out);
  for (size_t i = 0; i < f.rows(); ++i) {
    auto row = f.row(i);
    for (size_t j = 0; j < row.size(); ++j) row[j] += w.ffn_b2[j];
  }
  return add_rows(y, f);
}

Matrix conv_block(const Matrix& tokens, const ConvBlockWeights& w) {
  const size_t t = tokens.rows();
  const size_t dim = tokens.cols();
  Matrix out(t, dim);
  for (size_t i = 0; i < t; ++i) {
    for (int k = -1; k <= 1; ++k) {
      const int64_t src = static_cast<int64_t>(i) + k;
      if (src < 0 || src >= static_cast<int64_t>(t)) continue;
      const Matrix& tap = w.taps[static_cast<size_t>(k + 1)];
      for (size_t c = 0; c < dim; ++c) {
        const float v = tokens.at(static_cast<size_t>(src), c);
        if (v == 0.0f) continue;
        for (size_t o = 0; o < dim; ++o) {
          out.at(i, o) += v * tap.at(c, o);
        }
      }
    }
  }
  for (size_t i = 0; i < t; ++i) {
    auto row = out.row(i);
    for (size_t j = 0; j < dim; ++j) {
      row[j] = std::max(row[j] + w.bias[j], 0.0f);
    }
  }
  return out;
}

Matrix hyper_encode(const Matrix& quantized_styles,
                    const HyperEncoderWeights& w) {
  if (quantized_styles.rows() != kNumStyleVectors) {
    throw ShapeError("hyper_encode: expects the full 18-token input");
  }
  Matrix x = add_rows(quantized_styles, w.pos);
  for (const auto& block : w.blocks) x = style_block(x, block, nullptr);
  return x;
}

GaussianParams hyper_decode(const Matrix& hyperpriors,
                            const HyperDecoderWeights& w, LayerId upto) {
  const size_t want = layer_end(upto);
  if (hyperpriors.rows() != want) {
    throw ShapeError("hyper_decode: token count must cover layers <= upto");
  }
  Matrix x(want, hyperpriors.cols());
  for (size_t i = 0; i < want; ++i) {
    for (size_t j = 0; j < x.cols(); ++j) {
      x.at(i, j) = hyperpriors.at(i, j) + w.pos.at(i, j);
    }
  }
  const SequenceMask mask = layered_sequence_mask(want);
  for (const auto& block : w.blocks) x = style_block(x, block, &mask);

  const size_t dim = w.mu_head.cols();
  GaussianParams out;
  out.mu.resize(want * dim);
  out.delta.resize(want * dim);
  const Matrix mu = matmul(x, w.mu_head);
  const Matrix raw = matmul(x, w.delta_head);
  for (size_t i = 0; i < want; ++i) {
    for (size_t j = 0; j < dim; ++j) {
      out.mu[i * dim + j] = mu.at(i, j) + w.mu_bias[j];
      out.delta[i * dim + j] =
          softplus(raw.at(i, j) + w.delta_bias[j]) + kDeltaMin;
    }
  }
  return out;
}

namespace {

GaussianParams refine_with_context(const GaussianParams& base,
                                   const Matrix& context_tokens,
                                   const CrossRefineWeights& w) {
  const size_t dim = w.context_block.model_dim();
  if (base.mu.size() != kVectorsPerLayer * dim) {
    throw ShapeError("cross refine: base params must cover one 6-token layer");
  }
  const Matrix ctx = style_block(context_tokens, w.context_block, nullptr);
  const Matrix mu_in = rows_as_matrix(base.mu, kVectorsPerLayer, dim);
  const Matrix dl_in = rows_as_matrix(base.delta, kVectorsPerLayer, dim);
  const Matrix mu_out = cross_block(mu_in, ctx, w.mu_path);
  const Matrix dl_out = cross_block(dl_in, ctx, w.delta_path);
  GaussianParams out;
  out.mu.assign(mu_out.data().begin(), mu_out.data().end());
  out.delta.resize(dl_out.data().size());
  for (size_t i = 0; i < out.delta.size(); ++i) {
    out.delta[i] = std::max(dl_out.data()[i], kDeltaMin);
  }
  return out;
}

}  // namespace

GaussianParams cross_refine_l2(const GaussianParams& base,
                               const Matrix& decoded_l1,
                               const CrossRefineWeights& w) {
  if (decoded_l1.rows() != kVectorsPerLayer) {
    throw ShapeError("cross_refine_l2: context must be the 6 layer-1 tokens");
  }
  return refine_with_context(base, decoded_l1, w);
}

GaussianParams cross_refine_l3(const GaussianParams& base,
                               const Matrix& decoded_l1,
                               const Matrix& decoded_l2,
                               const CrossFuseWeights& w) {
  if (decoded_l1.rows() != kVectorsPerLayer ||
      decoded_l2.rows() != kVectorsPerLayer) {
    throw ShapeError("cross_refine_l3: context must be two 6-token layers");
  }
  Matrix concat(2 * kVectorsPerLayer, decoded_l1.cols());
  for (size_t i = 0; i < kVectorsPerLayer; ++i) {
    for (size_t j = 0; j < concat.cols(); ++j) {
      concat.at(i, j) = decoded_l1.at(i, j);
      concat.at(kVectorsPerLayer + i, j) = decoded_l2.at(i, j);
    }
  }
  Matrix fused = concat;
  for (const auto& cb : w.fuse) fused = conv_block(fused, cb);
  return refine_with_context(base, fused, w.refine);
}

}  // namespace sfc
