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

// sfc: scalable style-vector codec command line tool.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfc/bitstream.hpp"
#include "sfc/error.hpp"
#include "sfc/rd_eval.hpp"
#include "sfc/rng.hpp"
#include "sfc/style_io.hpp"
#include "sfc/weights.hpp"

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw sfc::FormatError("cannot open: " + path);
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(f)),
                              std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw sfc::FormatError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw sfc::FormatError("write failure: " + path);
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw sfc::FormatError("cannot open: " + path);
  std::vector<double> out;
  double v;
  while (f >> v) out.push_back(v);
  return out;
}

std::vector<float> to_float(const std::vector<double>& v) {
  return std::vector<float>(v.begin(), v.end());
}

std::string stream_name(const std::string& base, size_t index, size_t count) {
  if (count == 1) return base;
  return base + "." + std::to_string(index);
}

void print_rates(size_t set_index, const sfc::RateReport& r,
                 bool escape_flood) {
  for (size_t k = 0; k < sfc::kNumLayers; ++k) {
    const auto& l = r.layers[k];
    std::printf(
        "set=%zu layer=%zu hyper_bits=%llu style_bits=%llu total_bits=%llu "
        "est_bits=%.2f escapes=%zu bpp=%.6f\n",
        set_index, k + 1, static_cast<unsigned long long>(l.hyper_bits),
        static_cast<unsigned long long>(l.style_bits),
        static_cast<unsigned long long>(l.total_bits()),
        l.est_hyper_bits + l.est_style_bits, l.escape_count,
        r.layer_bpp(sfc::make_layer_id(static_cast<int>(k) + 1)));
  }
  std::printf("set=%zu total_bits=%llu bpp=%.6f escape_flood=%d\n", set_index,
              static_cast<unsigned long long>(r.total_bits()), r.bpp(),
              escape_flood ? 1 : 0);
}

int run(int argc, char** argv) {
  CLI::App app{"Scalable three-layer entropy codec for style vectors"};
  app.require_subcommand(1);

  // ---- gen-weights ----
  auto* gw = app.add_subcommand("gen-weights", "Generate a seeded weight file");
  uint64_t gw_seed = 1;
  std::string gw_out;
  sfc::CodecConfig gw_cfg;
  std::string gw_init = "zero";
  gw->add_option("--seed", gw_seed, "Generator seed");
  gw->add_option("--out", gw_out, "Output weight file")->required();
  gw->add_option("--style-dim", gw_cfg.style_dim, "Style vector dimension");
  gw->add_option("--hyper-dim", gw_cfg.hyper_dim, "Hyperprior dimension");
  gw->add_option("--heads", gw_cfg.heads, "Attention heads");
  gw->add_option("--style-span", gw_cfg.style_span, "Style symbol span");
  gw->add_option("--hyper-span", gw_cfg.hyper_span, "Hyperprior symbol span");
  gw->add_option("--pixel-count", gw_cfg.pixel_count, "bpp denominator");
  gw->add_option("--residual-init", gw_init, "zero | random");

  // ---- gen-styles ----
  auto* gs = app.add_subcommand(
      "gen-styles", "Generate seeded residual style vectors for testing");
  uint64_t gs_seed = 1;
  uint32_t gs_count = 1;
  uint32_t gs_dim = 512;
  double gs_scale = 4.0;
  std::string gs_out;
  gs->add_option("--seed", gs_seed, "Generator seed");
  gs->add_option("--count", gs_count, "Number of style sets");
  gs->add_option("--style-dim", gs_dim, "Style vector dimension");
  gs->add_option("--scale", gs_scale, "Uniform amplitude of the residuals");
  gs->add_option("--out", gs_out, "Output style file")->required();

  // ---- encode ----
  auto* en = app.add_subcommand("encode", "Encode style sets to bitstreams");
  std::string en_weights, en_in, en_out;
  en->add_option("--weights", en_weights, "Weight file")->required();
  en->add_option("--in", en_in, "Style file")->required();
  en->add_option("--out", en_out, "Output stream (suffix .N when multiple)")
      ->required();

  // ---- decode ----
  auto* de = app.add_subcommand("decode", "Decode a bitstream to style sets");
  std::string de_weights, de_in, de_out;
  int de_layers = 3;
  de->add_option("--weights", de_weights, "Weight file")->required();
  de->add_option("--in", de_in, "Input stream")->required();
  de->add_option("--out", de_out, "Output style file")->required();
  de->add_option("--layers", de_layers, "Decode layers 1..k")
      ->check(CLI::Range(1, 3));

  // ---- truncate ----
  auto* tr = app.add_subcommand("truncate", "Drop layers above k");
  std::string tr_in, tr_out;
  int tr_layers = 1;
  tr->add_option("--in", tr_in, "Input stream")->required();
  tr->add_option("--out", tr_out, "Output stream")->required();
  tr->add_option("--layers", tr_layers, "Layers to keep")
      ->check(CLI::Range(1, 3));

  // ---- inspect ----
  auto* in = app.add_subcommand("inspect", "Print the stream header");
  std::string in_in;
  uint64_t in_pixels = 1024ull * 1024ull;
  in->add_option("--in", in_in, "Input stream")->required();
  in->add_option("--pixel-count", in_pixels, "bpp denominator");

  // ---- metrics ----
  auto* me = app.add_subcommand("metrics", "Evaluation metrics");
  me->require_subcommand(1);

  auto* me_nme = me->add_subcommand("nme", "Normalized mean error");
  std::string nme_pred, nme_ref;
  size_t nme_dim = 2;
  double nme_norm = 1.0;
  bool nme_euclidean = false;
  me_nme->add_option("--pred", nme_pred, "Predicted points file")->required();
  me_nme->add_option("--ref", nme_ref, "Reference points file")->required();
  me_nme->add_option("--point-dim", nme_dim, "Coordinates per point");
  me_nme->add_option("--normalizer", nme_norm, "Per-point normalizer");
  me_nme->add_flag("--euclidean", nme_euclidean,
                   "Use plain distances instead of squared distances");

  auto* me_fw = me->add_subcommand("fwiou", "Frequency-weighted IoU");
  std::string fw_in;
  me_fw->add_option("--confusion", fw_in,
                    "Text file: n then n*n reference-major counts")
      ->required();

  auto* me_mos = me->add_subcommand("mos", "Mean opinion score");
  std::string mos_in;
  me_mos->add_option("--scores", mos_in, "Text file of raw scores")
      ->required();

  auto* me_obj = me->add_subcommand("objective", "Layer / scalable objective");
  int obj_layer = 0;  // 0 = scalable sum
  double obj_lambda = 10.0;
  std::vector<double> obj_rates;
  std::vector<double> obj_d;
  sfc::ObjectiveWeights obj_w;
  me_obj->add_option("--layer", obj_layer, "1..3, or 0 for the scalable sum")
      ->check(CLI::Range(0, 3));
  me_obj->add_option("--lambda", obj_lambda, "Rate multiplier");
  me_obj
      ->add_option("--rates", obj_rates,
                   "Cumulative bpp per layer (1 value for a single layer)")
      ->required();
  me_obj
      ->add_option("--distortions", obj_d,
                   "Per layer: landmark seg identity mse lpips adv")
      ->required();
  me_obj->add_option("--w1", obj_w.w1, "Middle-layer structural weight");
  me_obj->add_option("--w2", obj_w.w2, "Enhanced-layer structural weight");
  me_obj->add_option("--w3", obj_w.w3, "Enhanced-layer identity weight");
  me_obj->add_option("--lambda-lm", obj_w.lambda_lm, "Landmark weight");
  me_obj->add_option("--lambda-sg", obj_w.lambda_sg, "Segmentation weight");
  me_obj->add_option("--lambda-id", obj_w.lambda_id, "Identity weight");
  me_obj->add_option("--lambda-mse", obj_w.lambda_mse, "MSE weight");
  me_obj->add_option("--lambda-lpips", obj_w.lambda_lpips, "LPIPS weight");
  me_obj->add_option("--lambda-adv", obj_w.lambda_adv, "Adversarial weight");

  CLI11_PARSE(app, argc, argv);

  if (gw->parsed()) {
    sfc::ResidualInit init;
    if (gw_init == "zero") {
      init = sfc::ResidualInit::kZero;
    } else if (gw_init == "random") {
      init = sfc::ResidualInit::kRandom;
    } else {
      throw sfc::ConfigError("--residual-init must be zero or random");
    }
    const sfc::Weights w = sfc::generate_weights(gw_seed, gw_cfg, init);
    sfc::save_weights(w, gw_out);
    std::printf("weights=%s digest=%016llx\n", gw_out.c_str(),
                static_cast<unsigned long long>(w.digest));
    return 0;
  }

  if (gs->parsed()) {
    sfc::SeededRng rng(gs_seed);
    std::vector<sfc::StyleVectorSet> sets;
    sets.reserve(gs_count);
    for (uint32_t i = 0; i < gs_count; ++i) {
      sfc::Matrix m(sfc::kNumStyleVectors, gs_dim);
      for (float& v : m.data()) {
        v = rng.uniform(-static_cast<float>(gs_scale),
                        static_cast<float>(gs_scale));
      }
      sets.emplace_back(std::move(m));
    }
    sfc::save_style_sets(sets, gs_out);
    std::printf("styles=%s count=%u style_dim=%u\n", gs_out.c_str(), gs_count,
                gs_dim);
    return 0;
  }

  if (en->parsed()) {
    const sfc::Weights w = sfc::load_weights(en_weights);
    const auto sets = sfc::load_style_sets(en_in);
    for (size_t i = 0; i < sets.size(); ++i) {
      const sfc::EncodeResult r = sfc::encode(sets[i], w);
      write_file(stream_name(en_out, i, sets.size()), r.stream);
      print_rates(i, r.rates, r.escape_flood);
    }
    return 0;
  }

  if (de->parsed()) {
    const sfc::Weights w = sfc::load_weights(de_weights);
    const auto bytes = read_file(de_in);
    const sfc::StyleVectorSet s =
        sfc::decode(bytes, w, sfc::make_layer_id(de_layers));
    sfc::save_style_sets({s}, de_out);
    std::printf("decoded=%s layers=%d\n", de_out.c_str(), de_layers);
    return 0;
  }

  if (tr->parsed()) {
    const auto bytes = read_file(tr_in);
    const auto out = sfc::truncate_to_layer(bytes, sfc::make_layer_id(tr_layers));
    write_file(tr_out, out);
    std::printf("truncated=%s layers=%d bytes=%zu\n", tr_out.c_str(),
                tr_layers, out.size());
    return 0;
  }

  if (in->parsed()) {
    const auto bytes = read_file(in_in);
    const sfc::StreamInfo info = sfc::inspect(bytes);
    std::printf("version=%u digest=%016llx present_layers=%d\n", info.version,
                static_cast<unsigned long long>(info.digest),
                info.present_layers());
    const sfc::RateReport r = sfc::measure_rates(bytes, in_pixels);
    for (size_t k = 0; k < sfc::kNumLayers; ++k) {
      std::printf("layer=%zu hyper_len=%u style_len=%u crc=%08x bpp=%.6f\n",
                  k + 1, info.hyper_len[k], info.style_len[k], info.crc[k],
                  r.layer_bpp(sfc::make_layer_id(static_cast<int>(k) + 1)));
    }
    std::printf("total_bits=%llu bpp=%.6f\n",
                static_cast<unsigned long long>(r.total_bits()), r.bpp());
    return 0;
  }

  if (me_nme->parsed()) {
    const auto pred = to_float(read_numbers(nme_pred));
    const auto ref = to_float(read_numbers(nme_ref));
    std::printf("nme=%.9f\n",
                sfc::nme(pred, ref, nme_dim, nme_norm, nme_euclidean));
    return 0;
  }

  if (me_fw->parsed()) {
    const auto nums = read_numbers(fw_in);
    if (nums.empty()) throw sfc::FormatError("fwiou: empty confusion file");
    const size_t n = static_cast<size_t>(nums[0]);
    if (nums.size() != 1 + n * n) {
      throw sfc::FormatError("fwiou: expected n followed by n*n counts");
    }
    std::vector<std::vector<uint64_t>> confusion(n, std::vector<uint64_t>(n));
    for (size_t j = 0; j < n; ++j) {
      for (size_t i = 0; i < n; ++i) {
        confusion[j][i] = static_cast<uint64_t>(nums[1 + j * n + i]);
      }
    }
    std::printf("fwiou=%.9f\n", sfc::fwiou(confusion));
    return 0;
  }

  if (me_mos->parsed()) {
    const auto scores = read_numbers(mos_in);
    std::printf("mos=%.9f\n", sfc::mos(scores));
    return 0;
  }

  if (me_obj->parsed()) {
    const size_t layers = obj_layer == 0 ? sfc::kNumLayers : 1;
    if (obj_rates.size() != layers || obj_d.size() != 6 * layers) {
      throw sfc::ConfigError(
          "objective: need one rate and six distortions per layer");
    }
    auto bundle = [&](size_t i) {
      sfc::DistortionBundle d;
      d.landmark = obj_d[6 * i];
      d.segmentation = obj_d[6 * i + 1];
      d.identity = obj_d[6 * i + 2];
      d.mse = obj_d[6 * i + 3];
      d.lpips = obj_d[6 * i + 4];
      d.adversarial = obj_d[6 * i + 5];
      return d;
    };
    double value;
    if (obj_layer == 0) {
      std::array<double, sfc::kNumLayers> rates{obj_rates[0], obj_rates[1],
                                                obj_rates[2]};
      std::array<sfc::DistortionBundle, sfc::kNumLayers> ds{
          bundle(0), bundle(1), bundle(2)};
      value = sfc::scalable_objective(obj_lambda, rates, ds, obj_w);
    } else {
      value = sfc::layer_objective(sfc::make_layer_id(obj_layer), obj_lambda,
                                   obj_rates[0], bundle(0), obj_w);
    }
    std::printf("objective=%.9f\n", value);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
