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

#include "sfc/bitstream.hpp"

#include <cmath>
#include <cstring>

#include "sfc/checksum.hpp"
#include "sfc/error.hpp"
#include "sfc/range_coder.hpp"

namespace sfc {
namespace {

constexpr char kMagic[4] = {'S', 'F', 'C', '1'};
constexpr uint8_t kVersion = 1;

void put_u32(std::vector<uint8_t>& b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& b, uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
uint32_t get_u32(std::span<const uint8_t> b, size_t off) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t{b[off + i]} << (8 * i);
  return v;
}
uint64_t get_u64(std::span<const uint8_t> b, size_t off) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t{b[off + i]} << (8 * i);
  return v;
}

Matrix dequantize(std::span<const int32_t> symbols, size_t rows, size_t cols) {
  Matrix m(rows, cols);
  for (size_t i = 0; i < symbols.size(); ++i) {
    m.data()[i] = static_cast<float>(symbols[i]);
  }
  return m;
}

GaussianParams slice_layer(const GaussianParams& all, size_t layer_index,
                           size_t dim) {
  GaussianParams out;
  const size_t begin = layer_index * kVectorsPerLayer * dim;
  const size_t len = kVectorsPerLayer * dim;
  out.mu.assign(all.mu.begin() + begin, all.mu.begin() + begin + len);
  out.delta.assign(all.delta.begin() + begin, all.delta.begin() + begin + len);
  return out;
}

Matrix token_rows(const Matrix& m, size_t begin, size_t count) {
  Matrix out(count, m.cols());
  for (size_t i = 0; i < count; ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(begin + i, j);
  }
  return out;
}

// Escape cost in model-estimate terms: escape slot against the coder total
// plus 32 raw bits.
double escape_bits(uint32_t precision_bits) {
  const double total = static_cast<double>((1u << precision_bits) + 1);
  return std::log2(total) + 32.0;
}

struct SubStream {
  std::vector<uint8_t> bytes;
  double est_bits = 0.0;
  size_t escapes = 0;
};

SubStream code_hyper_layer(std::span<const int32_t> qh, size_t layer_index,
                           const Weights& w,
                           const std::vector<std::vector<double>>& prior_pmf,
                           const std::vector<FrequencyTable>& prior_tables) {
  const CodecConfig& c = w.config;
  SubStream out;
  RangeEncoder enc;
  for (size_t t = layer_index * kVectorsPerLayer;
       t < (layer_index + 1) * kVectorsPerLayer; ++t) {
    for (size_t ch = 0; ch < c.hyper_dim; ++ch) {
      const size_t flat = t * c.hyper_dim + ch;
      const int32_t s = qh[flat];
      const FrequencyTable& table = prior_tables[flat];
      if (table.contains(s)) {
        enc.encode_symbol(table, s);
        out.est_bits -=
            std::log2(prior_pmf[flat][static_cast<size_t>(s - table.symbol_min)]);
      } else {
        enc.encode_escape_value(table, s);
        out.est_bits += escape_bits(c.precision_bits);
        ++out.escapes;
      }
    }
  }
  out.bytes = enc.finish();
  return out;
}

SubStream code_style_layer(std::span<const int32_t> qs, size_t layer_index,
                           const GaussianParams& params, const Weights& w) {
  const CodecConfig& c = w.config;
  SubStream out;
  RangeEncoder enc;
  for (size_t i = 0; i < kVectorsPerLayer; ++i) {
    const size_t token = layer_index * kVectorsPerLayer + i;
    for (size_t j = 0; j < c.style_dim; ++j) {
      const size_t pflat = i * c.style_dim + j;
      const auto pmf = gaussian_pmf(params.mu[pflat], params.delta[pflat],
                                    -c.style_span, c.style_span);
      const FrequencyTable table =
          build_frequency_table(pmf, -c.style_span, c.precision_bits);
      const int32_t s = qs[token * c.style_dim + j];
      if (table.contains(s)) {
        enc.encode_symbol(table, s);
        out.est_bits -= std::log2(pmf[static_cast<size_t>(s + c.style_span)]);
      } else {
        enc.encode_escape_value(table, s);
        out.est_bits += escape_bits(c.precision_bits);
        ++out.escapes;
      }
    }
  }
  out.bytes = enc.finish();
  return out;
}

void decode_style_layer(RangeDecoder& dec, size_t layer_index,
                        const GaussianParams& params, const Weights& w,
                        Matrix& styles) {
  const CodecConfig& c = w.config;
  for (size_t i = 0; i < kVectorsPerLayer; ++i) {
    const size_t token = layer_index * kVectorsPerLayer + i;
    for (size_t j = 0; j < c.style_dim; ++j) {
      const size_t pflat = i * c.style_dim + j;
      const auto pmf = gaussian_pmf(params.mu[pflat], params.delta[pflat],
                                    -c.style_span, c.style_span);
      const FrequencyTable table =
          build_frequency_table(pmf, -c.style_span, c.precision_bits);
      styles.at(token, j) = static_cast<float>(dec.decode_symbol(table));
    }
  }
}

std::vector<FrequencyTable> build_prior_tables(
    const Weights& w, std::vector<std::vector<double>>* pmfs) {
  const CodecConfig& c = w.config;
  std::vector<FrequencyTable> tables;
  tables.reserve(c.tokens * c.hyper_dim);
  if (pmfs) pmfs->reserve(c.tokens * c.hyper_dim);
  for (size_t t = 0; t < c.tokens; ++t) {
    for (size_t ch = 0; ch < c.hyper_dim; ++ch) {
      auto pmf = logistic_pmf(w.prior.at(t, ch), -c.hyper_span, c.hyper_span);
      tables.push_back(
          build_frequency_table(pmf, -c.hyper_span, c.precision_bits));
      if (pmfs) pmfs->push_back(std::move(pmf));
    }
  }
  return tables;
}

}  // namespace

uint64_t RateReport::total_bits() const {
  uint64_t sum = 0;
  for (const auto& l : layers) sum += l.total_bits();
  return sum;
}

uint64_t RateReport::cumulative_bits(LayerId upto) const {
  uint64_t sum = 0;
  for (int k = 0; k < layer_value(upto); ++k) sum += layers[k].total_bits();
  return sum;
}

double RateReport::bpp() const {
  return static_cast<double>(total_bits()) / static_cast<double>(pixel_count);
}

double RateReport::layer_bpp(LayerId k) const {
  return static_cast<double>(layers[layer_value(k) - 1].total_bits()) /
         static_cast<double>(pixel_count);
}

int StreamInfo::present_layers() const {
  int n = 0;
  for (size_t k = 0; k < kNumLayers; ++k) {
    if (hyper_len[k] + style_len[k] > 0) n = static_cast<int>(k) + 1;
  }
  return n;
}

StreamInfo inspect(std::span<const uint8_t> stream) {
  if (stream.size() < kStreamHeaderSize) {
    throw FormatError("bitstream: header truncated");
  }
  if (std::memcmp(stream.data(), kMagic, 4) != 0) {
    throw FormatError("bitstream: bad magic");
  }
  StreamInfo info;
  info.version = stream[4];
  if (info.version != kVersion) {
    throw FormatError("bitstream: unsupported version");
  }
  info.digest = get_u64(stream, 5);
  size_t off = 13;
  for (size_t k = 0; k < kNumLayers; ++k) {
    info.hyper_len[k] = get_u32(stream, off);
    info.style_len[k] = get_u32(stream, off + 4);
    info.crc[k] = get_u32(stream, off + 8);
    off += 12;
  }
  return info;
}

std::vector<GaussianParams> derive_layer_params(
    const Matrix& dequantized_styles, const Matrix& dequantized_hyper,
    const Weights& w, LayerId upto) {
  const size_t dim = w.config.style_dim;
  const GaussianParams base = hyper_decode(dequantized_hyper, w.decoder, upto);
  std::vector<GaussianParams> out;
  out.push_back(slice_layer(base, 0, dim));
  if (layer_value(upto) >= 2) {
    const Matrix l1 = token_rows(dequantized_styles, 0, kVectorsPerLayer);
    out.push_back(cross_refine_l2(slice_layer(base, 1, dim), l1, w.cross_l2));
  }
  if (layer_value(upto) >= 3) {
    const Matrix l1 = token_rows(dequantized_styles, 0, kVectorsPerLayer);
    const Matrix l2 =
        token_rows(dequantized_styles, kVectorsPerLayer, kVectorsPerLayer);
    out.push_back(
        cross_refine_l3(slice_layer(base, 2, dim), l1, l2, w.cross_l3));
  }
  return out;
}

EncodeResult encode(const StyleVectorSet& styles, const Weights& w) {
  const CodecConfig& c = w.config;
  if (styles.dim() != c.style_dim) {
    throw ShapeError("encode: style dimension does not match weights");
  }

  const std::vector<int32_t> qs = quantize(styles.matrix().data());
  const Matrix xq = dequantize(qs, c.tokens, c.style_dim);

  const Matrix h = hyper_encode(xq, w.encoder);
  const std::vector<int32_t> qh = quantize(h.data());
  const Matrix hq = dequantize(qh, c.tokens, c.hyper_dim);

  std::vector<std::vector<double>> prior_pmfs;
  const auto prior_tables = build_prior_tables(w, &prior_pmfs);

  // Both sides derive the Gaussian parameters through the identical path:
  // masked hyper-decode, then cross-layer refinement from already decoded
  // (dequantized) style symbols.
  const auto params =
      derive_layer_params(xq, hq, w, LayerId::kEnhanced);

  EncodeResult result;
  result.rates.pixel_count = c.pixel_count;

  std::array<SubStream, kNumLayers> hyper_sub, style_sub;
  size_t total_escapes = 0;
  for (size_t k = 0; k < kNumLayers; ++k) {
    hyper_sub[k] = code_hyper_layer(qh, k, w, prior_pmfs, prior_tables);
    style_sub[k] = code_style_layer(qs, k, params[k], w);
    auto& lr = result.rates.layers[k];
    lr.hyper_bits = hyper_sub[k].bytes.size() * 8;
    lr.style_bits = style_sub[k].bytes.size() * 8;
    lr.est_hyper_bits = hyper_sub[k].est_bits;
    lr.est_style_bits = style_sub[k].est_bits;
    lr.escape_count = hyper_sub[k].escapes + style_sub[k].escapes;
    total_escapes += lr.escape_count;
  }
  const size_t total_symbols = c.tokens * (c.style_dim + c.hyper_dim);
  result.escape_flood = total_escapes * 10 > total_symbols;

  auto& out = result.stream;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  put_u64(out, w.digest);
  for (size_t k = 0; k < kNumLayers; ++k) {
    put_u32(out, static_cast<uint32_t>(hyper_sub[k].bytes.size()));
    put_u32(out, static_cast<uint32_t>(style_sub[k].bytes.size()));
    std::vector<uint8_t> seg = hyper_sub[k].bytes;
    seg.insert(seg.end(), style_sub[k].bytes.begin(), style_sub[k].bytes.end());
    put_u32(out, crc32(seg));
  }
  for (size_t k = 0; k < kNumLayers; ++k) {
    out.insert(out.end(), hyper_sub[k].bytes.begin(), hyper_sub[k].bytes.end());
    out.insert(out.end(), style_sub[k].bytes.begin(), style_sub[k].bytes.end());
  }
  return result;
}

StyleVectorSet decode(std::span<const uint8_t> stream, const Weights& w,
                      LayerId upto) {
  const CodecConfig& c = w.config;
  const StreamInfo info = inspect(stream);
  if (info.digest != w.digest) {
    throw DecodeError("decode: stream was produced with different weights");
  }
  const int want = layer_value(upto);
  if (info.present_layers() < want) {
    throw DecodeError("decode: stream does not contain the requested layers");
  }

  // Segment offsets; verify bounds and checksums for the layers we read.
  std::array<std::span<const uint8_t>, kNumLayers> hyper_seg, style_seg;
  size_t off = kStreamHeaderSize;
  for (size_t k = 0; k < kNumLayers; ++k) {
    const size_t hl = info.hyper_len[k];
    const size_t sl = info.style_len[k];
    if (off + hl + sl > stream.size()) {
      throw DecodeError("decode: truncated segment payload");
    }
    hyper_seg[k] = stream.subspan(off, hl);
    style_seg[k] = stream.subspan(off + hl, sl);
    off += hl + sl;
  }
  for (int k = 0; k < want; ++k) {
    std::vector<uint8_t> seg(hyper_seg[k].begin(), hyper_seg[k].end());
    seg.insert(seg.end(), style_seg[k].begin(), style_seg[k].end());
    if (crc32(seg) != info.crc[k]) {
      throw DecodeError("decode: segment checksum failure");
    }
  }

  const auto prior_tables = build_prior_tables(w, nullptr);

  // Hyperprior symbols for layers <= upto.
  const size_t hyper_tokens = static_cast<size_t>(want) * kVectorsPerLayer;
  Matrix hq(hyper_tokens, c.hyper_dim);
  for (int k = 0; k < want; ++k) {
    RangeDecoder dec(hyper_seg[k]);
    for (size_t i = 0; i < kVectorsPerLayer; ++i) {
      const size_t token = static_cast<size_t>(k) * kVectorsPerLayer + i;
      for (size_t ch = 0; ch < c.hyper_dim; ++ch) {
        hq.at(token, ch) = static_cast<float>(
            dec.decode_symbol(prior_tables[token * c.hyper_dim + ch]));
      }
    }
  }

  const GaussianParams base = hyper_decode(hq, w.decoder, upto);
  const size_t dim = c.style_dim;
  Matrix styles(c.tokens, dim);

  {
    RangeDecoder dec(style_seg[0]);
    decode_style_layer(dec, 0, slice_layer(base, 0, dim), w, styles);
  }
  if (want >= 2) {
    const Matrix l1 = token_rows(styles, 0, kVectorsPerLayer);
    const GaussianParams p2 =
        cross_refine_l2(slice_layer(base, 1, dim), l1, w.cross_l2);
    RangeDecoder dec(style_seg[1]);
    decode_style_layer(dec, 1, p2, w, styles);
  }
  if (want >= 3) {
    const Matrix l1 = token_rows(styles, 0, kVectorsPerLayer);
    const Matrix l2 = token_rows(styles, kVectorsPerLayer, kVectorsPerLayer);
    const GaussianParams p3 =
        cross_refine_l3(slice_layer(base, 2, dim), l1, l2, w.cross_l3);
    RangeDecoder dec(style_seg[2]);
    decode_style_layer(dec, 2, p3, w, styles);
  }
  return StyleVectorSet(std::move(styles));
}

std::vector<uint8_t> truncate_to_layer(std::span<const uint8_t> stream,
                                       LayerId k) {
  const StreamInfo info = inspect(stream);
  const int keep = layer_value(k);

  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  put_u64(out, info.digest);
  for (int i = 0; i < static_cast<int>(kNumLayers); ++i) {
    if (i < keep) {
      put_u32(out, info.hyper_len[i]);
      put_u32(out, info.style_len[i]);
      put_u32(out, info.crc[i]);
    } else {
      put_u32(out, 0);
      put_u32(out, 0);
      put_u32(out, 0);
    }
  }
  size_t off = kStreamHeaderSize;
  for (int i = 0; i < keep; ++i) {
    const size_t len =
        static_cast<size_t>(info.hyper_len[i]) + info.style_len[i];
    if (off + len > stream.size()) {
      throw DecodeError("truncate: source stream is itself truncated");
    }
    out.insert(out.end(), stream.begin() + off, stream.begin() + off + len);
    off += len;
  }
  return out;
}

RateReport measure_rates(std::span<const uint8_t> stream,
                         uint64_t pixel_count) {
  const StreamInfo info = inspect(stream);
  RateReport r;
  r.pixel_count = pixel_count;
  for (size_t k = 0; k < kNumLayers; ++k) {
    r.layers[k].hyper_bits = uint64_t{info.hyper_len[k]} * 8;
    r.layers[k].style_bits = uint64_t{info.style_len[k]} * 8;
  }
  return r;
}

}  // namespace sfc
