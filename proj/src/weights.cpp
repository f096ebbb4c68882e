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

#include "sfc/weights.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include "sfc/checksum.hpp"
#include "sfc/error.hpp"

namespace sfc {
namespace {

constexpr char kMagic[4] = {'S', 'F', 'W', '1'};
constexpr uint8_t kVersion = 1;

// Channel staging of the hyper autoencoder. For the default 512 -> 16 config
// this yields 512 -> 128 -> 48 -> 16 (and the reverse on the decoder side).
std::array<size_t, 4> encoder_dims(const CodecConfig& c) {
  const size_t d = c.style_dim;
  const size_t h = c.hyper_dim;
  auto stage = [&](size_t num, size_t den) {
    size_t v = d * num / den;
    v -= v % c.heads;  // heads must divide every attention width
    return std::max<size_t>(h, v);
  };
  return {d, stage(1, 4), stage(3, 32), h};
}

// --- tensor inventory -------------------------------------------------

struct TensorRef {
  std::string name;
  Matrix* mat = nullptr;
  std::vector<float>* vec = nullptr;
  size_t vec_len = 0;  // expected length when vec != nullptr
};

void collect_block(const std::string& prefix, StyleBlockWeights& b, size_t din,
                   size_t dout, std::vector<TensorRef>& out) {
  const size_t hidden = 2 * std::max(din, dout);
  out.push_back({prefix + ".wq", &b.attn.wq});
  out.push_back({prefix + ".wk", &b.attn.wk});
  out.push_back({prefix + ".wv", &b.attn.wv});
  out.push_back({prefix + ".wo", &b.attn.wo});
  out.push_back({prefix + ".ln1_gain", nullptr, &b.ln1_gain, din});
  out.push_back({prefix + ".ln1_bias", nullptr, &b.ln1_bias, din});
  out.push_back({prefix + ".ffn_in", &b.ffn_in});
  out.push_back({prefix + ".ffn_b1", nullptr, &b.ffn_b1, hidden});
  out.push_back({prefix + ".ffn_out", &b.ffn_out});
  out.push_back({prefix + ".ffn_b2", nullptr, &b.ffn_b2, dout});
  out.push_back({prefix + ".ln2_gain", nullptr, &b.ln2_gain, dout});
  out.push_back({prefix + ".ln2_bias", nullptr, &b.ln2_bias, dout});
}

void collect_cross(const std::string& prefix, CrossBlockWeights& b, size_t dim,
                   std::vector<TensorRef>& out) {
  out.push_back({prefix + ".lnq_gain", nullptr, &b.lnq_gain, dim});
  out.push_back({prefix + ".lnq_bias", nullptr, &b.lnq_bias, dim});
  out.push_back({prefix + ".lnkv_gain", nullptr, &b.lnkv_gain, dim});
  out.push_back({prefix + ".lnkv_bias", nullptr, &b.lnkv_bias, dim});
  out.push_back({prefix + ".wq", &b.attn.wq});
  out.push_back({prefix + ".wk", &b.attn.wk});
  out.push_back({prefix + ".wv", &b.attn.wv});
  out.push_back({prefix + ".wo", &b.attn.wo});
  out.push_back({prefix + ".ln2_gain", nullptr, &b.ln2_gain, dim});
  out.push_back({prefix + ".ln2_bias", nullptr, &b.ln2_bias, dim});
  out.push_back({prefix + ".ffn_in", &b.ffn_in});
  out.push_back({prefix + ".ffn_b1", nullptr, &b.ffn_b1, 2 * dim});
  out.push_back({prefix + ".ffn_out", &b.ffn_out});
  out.push_back({prefix + ".ffn_b2", nullptr, &b.ffn_b2, dim});
}

void collect_refine(const std::string& prefix, CrossRefineWeights& r,
                    size_t dim, std::vector<TensorRef>& out) {
  collect_block(prefix + ".ctx", r.context_block, dim, dim, out);
  collect_cross(prefix + ".mu", r.mu_path, dim, out);
  collect_cross(prefix + ".delta", r.delta_path, dim, out);
}

std::vector<TensorRef> collect_tensors(Weights& w) {
  const CodecConfig& c = w.config;
  const auto dims = encoder_dims(c);
  std::vector<TensorRef> out;
  out.push_back({"average", nullptr, &w.average, c.style_dim});
  out.push_back({"enc.pos", &w.encoder.pos});
  for (size_t i = 0; i < 3; ++i) {
    collect_block("enc.b" + std::to_string(i), w.encoder.blocks[i], dims[i],
                  dims[i + 1], out);
  }
  out.push_back({"dec.pos", &w.decoder.pos});
  for (size_t i = 0; i < 3; ++i) {
    collect_block("dec.b" + std::to_string(i), w.decoder.blocks[i],
                  dims[3 - i], dims[2 - i], out);
  }
  out.push_back({"dec.mu_head", &w.decoder.mu_head});
  out.push_back({"dec.mu_bias", nullptr, &w.decoder.mu_bias, c.style_dim});
  out.push_back({"dec.delta_head", &w.decoder.delta_head});
  out.push_back(
      {"dec.delta_bias", nullptr, &w.decoder.delta_bias, c.style_dim});
  collect_refine("cross2", w.cross_l2, c.style_dim, out);
  for (size_t i = 0; i < 3; ++i) {
    const std::string p = "cross3.fuse" + std::to_string(i);
    for (size_t t = 0; t < 3; ++t) {
      out.push_back({p + ".tap" + std::to_string(t), &w.cross_l3.fuse[i].taps[t]});
    }
    out.push_back({p + ".bias", nullptr, &w.cross_l3.fuse[i].bias, c.style_dim});
  }
  collect_refine("cross3", w.cross_l3.refine, c.style_dim, out);
  out.push_back({"prior.loc", &w.prior.loc});
  out.push_back({"prior.scale", &w.prior.scale});
  return out;
}

// Allocates every tensor at the shape implied by the config; zero filled.
Weights build_skeleton(const CodecConfig& c) {
  c.validate();
  Weights w;
  w.config = c;
  const auto dims = encoder_dims(c);
  w.average.assign(c.style_dim, 0.0f);

  auto init_block = [&](StyleBlockWeights& b, size_t din, size_t dout) {
    const size_t hidden = 2 * std::max(din, dout);
    b.attn = {Matrix(din, din), Matrix(din, din), Matrix(din, din),
              Matrix(din, din), c.heads};
    b.ln1_gain.assign(din, 0.0f);
    b.ln1_bias.assign(din, 0.0f);
    b.ffn_in = Matrix(din, hidden);
    b.ffn_b1.assign(hidden, 0.0f);
    b.ffn_out = Matrix(hidden, dout);
    b.ffn_b2.assign(dout, 0.0f);
    b.ln2_gain.assign(dout, 0.0f);
    b.ln2_bias.assign(dout, 0.0f);
  };
  auto init_cross = [&](CrossBlockWeights& b, size_t dim) {
    b.lnq_gain.assign(dim, 0.0f);
    b.lnq_bias.assign(dim, 0.0f);
    b.lnkv_gain.assign(dim, 0.0f);
    b.lnkv_bias.assign(dim, 0.0f);
    b.attn = {Matrix(dim, dim), Matrix(dim, dim), Matrix(dim, dim),
              Matrix(dim, dim), c.heads};
    b.ln2_gain.assign(dim, 0.0f);
    b.ln2_bias.assign(dim, 0.0f);
    b.ffn_in = Matrix(dim, 2 * dim);
    b.ffn_b1.assign(2 * dim, 0.0f);
    b.ffn_out = Matrix(2 * dim, dim);
    b.ffn_b2.assign(dim, 0.0f);
  };
  auto init_refine = [&](CrossRefineWeights& r) {
    init_block(r.context_block, c.style_dim, c.style_dim);
    init_cross(r.mu_path, c.style_dim);
    init_cross(r.delta_path, c.style_dim);
  };

  w.encoder.pos = Matrix(c.tokens, c.style_dim);
  for (size_t i = 0; i < 3; ++i) {
    init_block(w.encoder.blocks[i], dims[i], dims[i + 1]);
  }
  w.decoder.pos = Matrix(c.tokens, c.hyper_dim);
  for (size_t i = 0; i < 3; ++i) {
    init_block(w.decoder.blocks[i], dims[3 - i], dims[2 - i]);
  }
  w.decoder.mu_head = Matrix(c.style_dim, c.style_dim);
  w.decoder.mu_bias.assign(c.style_dim, 0.0f);
  w.decoder.delta_head = Matrix(c.style_dim, c.style_dim);
  w.decoder.delta_bias.assign(c.style_dim, 0.0f);
  init_refine(w.cross_l2);
  for (auto& cb : w.cross_l3.fuse) {
    for (auto& tap : cb.taps) tap = Matrix(c.style_dim, c.style_dim);
    cb.bias.assign(c.style_dim, 0.0f);
  }
  init_refine(w.cross_l3.refine);
  w.prior.loc = Matrix(c.tokens, c.hyper_dim);
  w.prior.scale = Matrix(c.tokens, c.hyper_dim);
  return w;
}

// --- little-endian buffer io -------------------------------------------

void put_u8(std::vector<uint8_t>& b, uint8_t v) { b.push_back(v); }
void put_u16(std::vector<uint8_t>& b, uint16_t v) {
  b.push_back(static_cast<uint8_t>(v));
  b.push_back(static_cast<uint8_t>(v >> 8));
}
void put_u32(std::vector<uint8_t>& b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& b, uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_f32(std::vector<uint8_t>& b, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  put_u32(b, bits);
}

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> b) : b_(b) {}
  uint8_t u8() { return next(); }
  uint16_t u16() { return u8() | (uint16_t{u8()} << 8); }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t{u8()} << (8 * i);
    return v;
  }
  uint64_t u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t{u8()} << (8 * i);
    return v;
  }
  float f32() {
    const uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
  std::string str(size_t n) {
    std::string s;
    for (size_t i = 0; i < n; ++i) s.push_back(static_cast<char>(u8()));
    return s;
  }
  size_t pos() const { return pos_; }
  std::span<const uint8_t> tail() const { return b_.subspan(pos_); }
  bool done() const { return pos_ == b_.size(); }

 private:
  uint8_t next() {
    if (pos_ >= b_.size()) throw FormatError("weight file: truncated");
    return b_[pos_++];
  }
  std::span<const uint8_t> b_;
  size_t pos_ = 0;
};

void serialize_payload(Weights& w, std::vector<uint8_t>& out) {
  const CodecConfig& c = w.config;
  put_u32(out, c.tokens);
  put_u32(out, c.style_dim);
  put_u32(out, c.hyper_dim);
  put_u32(out, c.heads);
  put_u32(out, static_cast<uint32_t>(c.style_span));
  put_u32(out, static_cast<uint32_t>(c.hyper_span));
  put_u32(out, c.precision_bits);
  put_u64(out, c.pixel_count);
  put_f32(out, c.delta_min);
  const auto tensors = collect_tensors(w);
  put_u32(out, static_cast<uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    put_u16(out, static_cast<uint16_t>(t.name.size()));
    for (char ch : t.name) put_u8(out, static_cast<uint8_t>(ch));
    if (t.mat) {
      put_u32(out, static_cast<uint32_t>(t.mat->rows()));
      put_u32(out, static_cast<uint32_t>(t.mat->cols()));
      for (float v : t.mat->data()) put_f32(out, v);
    } else {
      put_u32(out, 1);
      put_u32(out, static_cast<uint32_t>(t.vec->size()));
      for (float v : *t.vec) put_f32(out, v);
    }
  }
}

}  // namespace

void CodecConfig::validate() const {
  if (tokens != kNumStyleVectors) {
    throw ConfigError("config: tokens must be 18");
  }
  if (style_dim == 0 || style_dim % heads != 0) {
    throw ConfigError("config: heads must divide style_dim");
  }
  if (hyper_dim == 0 || hyper_dim % heads != 0) {
    throw ConfigError("config: heads must divide hyper_dim");
  }
  if (style_span < 1 || hyper_span < 1) {
    throw ConfigError("config: support spans must be positive");
  }
  if (precision_bits < 8 || precision_bits > 24) {
    throw ConfigError("config: precision_bits out of range");
  }
  const uint64_t budget = 1ull << precision_bits;
  if (static_cast<uint64_t>(style_span) * 2 + 2 > budget ||
      static_cast<uint64_t>(hyper_span) * 2 + 2 > budget) {
    throw ConfigError("config: support too large for precision");
  }
  if (pixel_count == 0) throw ConfigError("config: pixel_count must be > 0");
  if (std::abs(delta_min - kDeltaMin) > 1e-9f) {
    throw ConfigError("config: unsupported delta_min");
  }
}

Weights generate_weights(uint64_t seed, const CodecConfig& config,
                         ResidualInit init) {
  Weights w = build_skeleton(config);
  SeededRng rng(seed);
  for (const auto& t : collect_tensors(w)) {
    if (t.mat) {
      const float scale =
          1.0f / std::sqrt(static_cast<float>(std::max<size_t>(t.mat->rows(), 1)));
      *t.mat = seeded_matrix(rng, t.mat->rows(), t.mat->cols(), scale);
    } else {
      // Layer-norm gains start at 1, every other vector at 0.
      const bool is_gain = t.name.find("gain") != std::string::npos;
      t.vec->assign(t.vec_len, is_gain ? 1.0f : 0.0f);
    }
  }
  if (init == ResidualInit::kZero) {
    // Residual-output projections start at zero so untrained blocks begin
    // near identity.
    auto zero = [](Matrix& m) {
      for (float& v : m.data()) v = 0.0f;
    };
    auto zero_style_block = [&](StyleBlockWeights& b) {
      zero(b.attn.wo);
      if (b.model_dim() == b.out_dim()) zero(b.ffn_out);
    };
    auto zero_refine = [&](CrossRefineWeights& r) {
      zero_style_block(r.context_block);
      for (CrossBlockWeights* cb : {&r.mu_path, &r.delta_path}) {
        zero(cb->attn.wo);
        zero(cb->ffn_out);
      }
    };
    for (auto& b : w.encoder.blocks) zero_style_block(b);
    for (auto& b : w.decoder.blocks) zero_style_block(b);
    zero_refine(w.cross_l2);
    zero_refine(w.cross_l3.refine);
  }
  // Factorized prior: spread locations, moderate scales.
  {
    SeededRng prior_rng(seed ^ 0x9E3779B97F4A7C15ull);
    for (float& v : w.prior.loc.data()) v = prior_rng.uniform(-1.0f, 1.0f);
    for (float& v : w.prior.scale.data()) v = prior_rng.uniform(0.5f, 2.0f);
  }
  // Recompute the digest from the serialized form.
  std::vector<uint8_t> payload;
  serialize_payload(w, payload);
  Fnv64 h;
  h.update(payload);
  w.digest = h.digest();
  return w;
}

std::vector<uint8_t> serialize_weights(const Weights& w) {
  std::vector<uint8_t> payload;
  serialize_payload(const_cast<Weights&>(w), payload);
  Fnv64 h;
  h.update(payload);

  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u8(out, kVersion);
  put_u64(out, h.digest());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Weights deserialize_weights(std::span<const uint8_t> bytes) {
  Reader r(bytes);
  if (r.str(4) != std::string(kMagic, 4)) {
    throw FormatError("weight file: bad magic");
  }
  if (r.u8() != kVersion) throw FormatError("weight file: bad version");
  const uint64_t stored_digest = r.u64();
  {
    Fnv64 h;
    h.update(r.tail());
    if (h.digest() != stored_digest) {
      throw FormatError("weight file: digest mismatch (corrupt file)");
    }
  }

  CodecConfig c;
  c.tokens = r.u32();
  c.style_dim = r.u32();
  c.hyper_dim = r.u32();
  c.heads = r.u32();
  c.style_span = static_cast<int32_t>(r.u32());
  c.hyper_span = static_cast<int32_t>(r.u32());
  c.precision_bits = r.u32();
  c.pixel_count = r.u64();
  c.delta_min = r.f32();

  Weights w = build_skeleton(c);
  w.digest = stored_digest;

  const uint32_t count = r.u32();
  std::map<std::string, std::pair<Matrix, bool>> loaded;  // name -> (data, used)
  for (uint32_t i = 0; i < count; ++i) {
    const std::string name = r.str(r.u16());
    const uint32_t rows = r.u32();
    const uint32_t cols = r.u32();
    Matrix m(rows, cols);
    for (float& v : m.data()) v = r.f32();
    loaded.emplace(name, std::make_pair(std::move(m), false));
  }
  if (!r.done()) throw FormatError("weight file: trailing bytes");

  for (const auto& t : collect_tensors(w)) {
    auto it = loaded.find(t.name);
    if (it == loaded.end()) {
      throw FormatError("weight file: missing tensor " + t.name);
    }
    Matrix& m = it->second.first;
    it->second.second = true;
    if (t.mat) {
      if (m.rows() != t.mat->rows() || m.cols() != t.mat->cols()) {
        throw FormatError("weight file: bad shape for " + t.name);
      }
      *t.mat = std::move(m);
    } else {
      if (m.rows() != 1 || m.cols() != t.vec_len) {
        throw FormatError("weight file: bad shape for " + t.name);
      }
      t.vec->assign(m.data().begin(), m.data().end());
    }
  }
  for (const auto& [name, entry] : loaded) {
    if (!entry.second) throw FormatError("weight file: unknown tensor " + name);
  }
  for (float v : w.prior.scale.data()) {
    if (!(v >= 0.01f)) throw FormatError("weight file: prior scale below floor");
  }
  return w;
}

void save_weights(const Weights& w, const std::string& path) {
  const auto bytes = serialize_weights(w);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FormatError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw FormatError("write failed: " + path);
}

Weights load_weights(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  return deserialize_weights(bytes);
}

}  // namespace sfc
