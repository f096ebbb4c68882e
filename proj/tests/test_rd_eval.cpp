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

#include "sfc/rd_eval.hpp"

#include <cmath>

#include "doctest.h"
#include "sfc/error.hpp"

TEST_CASE("layer objectives combine rate and distortion terms") {
  sfc::DistortionBundle d;
  d.landmark = 0.2;
  d.segmentation = 0.2;
  d.identity = 0.4;

  // Basic layer: rate plus the plain structural terms.
  CHECK(sfc::layer_objective(sfc::LayerId::kBasic, 10.0, 0.5, d) ==
        doctest::Approx(10.0 * 0.5 + 0.2 + 0.2).epsilon(1e-12));

  // Middle layer, hand-checked value: 1000 + 1.5*(0.2+0.2) + 0.5*0.4.
  CHECK(sfc::layer_objective(sfc::LayerId::kMiddle, 1000.0, 1.0, d) ==
        doctest::Approx(1000.8).epsilon(1e-12));

  // Enhanced layer adds the pixel-level terms.
  sfc::DistortionBundle e = d;
  e.mse = 0.1;
  e.lpips = 0.25;
  e.adversarial = 2.0;
  const double expect = 10.0 * 0.9 + 2.0 * (0.2 + 0.2) + 1.5 * 0.5 * 0.4 +
                        1.0 * 0.1 + 0.8 * 0.25 + 0.01 * 2.0;
  CHECK(sfc::layer_objective(sfc::LayerId::kEnhanced, 10.0, 0.9, e) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("objective coefficients match their finite differences") {
  const double lambda = 7.0;
  const double rate = 0.3;
  sfc::DistortionBundle d;
  d.landmark = 0.11;
  d.segmentation = 0.21;
  d.identity = 0.31;
  d.mse = 0.41;
  d.lpips = 0.51;
  d.adversarial = 0.61;
  const double h = 1e-6;
  auto fd = [&](sfc::LayerId k, double sfc::DistortionBundle::* field) {
    sfc::DistortionBundle hi = d, lo = d;
    hi.*field += h;
    lo.*field -= h;
    return (sfc::layer_objective(k, lambda, rate, hi) -
            sfc::layer_objective(k, lambda, rate, lo)) /
           (2.0 * h);
  };
  CHECK(fd(sfc::LayerId::kBasic, &sfc::DistortionBundle::landmark) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fd(sfc::LayerId::kMiddle, &sfc::DistortionBundle::segmentation) ==
        doctest::Approx(1.5).epsilon(1e-6));
  CHECK(fd(sfc::LayerId::kMiddle, &sfc::DistortionBundle::identity) ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fd(sfc::LayerId::kEnhanced, &sfc::DistortionBundle::landmark) ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fd(sfc::LayerId::kEnhanced, &sfc::DistortionBundle::identity) ==
        doctest::Approx(0.75).epsilon(1e-6));
  CHECK(fd(sfc::LayerId::kEnhanced, &sfc::DistortionBundle::lpips) ==
        doctest::Approx(0.8).epsilon(1e-6));
  CHECK(fd(sfc::LayerId::kEnhanced, &sfc::DistortionBundle::adversarial) ==
        doctest::Approx(0.01).epsilon(1e-4));
}

TEST_CASE("the scalable objective is the sum of the three layer objectives") {
  std::array<double, 3> rates = {0.1, 0.25, 0.6};
  std::array<sfc::DistortionBundle, 3> ds;
  for (size_t i = 0; i < 3; ++i) {
    ds[i].landmark = 0.1 * double(i + 1);
    ds[i].segmentation = 0.05;
    ds[i].identity = 0.2;
    ds[i].mse = 0.3;
    ds[i].lpips = 0.1;
    ds[i].adversarial = 0.4;
  }
  const double lambda = 15.0;
  double expect = 0.0;
  for (int k = 1; k <= 3; ++k) {
    expect += sfc::layer_objective(sfc::make_layer_id(k), lambda,
                                   rates[size_t(k - 1)], ds[size_t(k - 1)]);
  }
  CHECK(sfc::scalable_objective(lambda, rates, ds) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("mse and cosine distance behave on reference fixtures") {
  const std::vector<float> a = {1.0f, 2.0f, 3.0f};
  const std::vector<float> b = {1.0f, 2.0f, 5.0f};
  CHECK(sfc::mse(a, a) == 0.0);
  CHECK(sfc::mse(a, b) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(sfc::feature_cosine_distance(a, a) == doctest::Approx(0.0));
  const std::vector<float> x = {1.0f, 0.0f};
  const std::vector<float> y = {0.0f, 1.0f};
  const std::vector<float> nx = {-2.0f, 0.0f};
  CHECK(sfc::feature_cosine_distance(x, y) == doctest::Approx(1.0));
  CHECK(sfc::feature_cosine_distance(x, nx) == doctest::Approx(2.0));
  CHECK_THROWS_AS(sfc::mse(a, x), sfc::ShapeError);
  const std::vector<float> z = {0.0f, 0.0f};
  CHECK_THROWS_AS(sfc::feature_cosine_distance(x, z), sfc::ShapeError);
}

TEST_CASE("nme averages normalized squared distances by default") {
  // Two 2-D points, each off by (3, 4): squared distance 25.
  const std::vector<float> pred = {3.0f, 4.0f, 13.0f, 24.0f};
  const std::vector<float> ref = {0.0f, 0.0f, 10.0f, 20.0f};
  CHECK(sfc::nme(pred, ref, 2, 25.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sfc::nme(pred, ref, 2, 5.0, /*euclidean=*/true) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sfc::nme(pred, ref, 2, 50.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(sfc::nme(pred, ref, 3, 1.0), sfc::ShapeError);
  CHECK_THROWS_AS(sfc::nme(pred, ref, 2, 0.0), sfc::ConfigError);
}

TEST_CASE("fwiou weights per-class IoU by reference frequency") {
  // Perfect prediction: 1.0 regardless of class balance.
  CHECK(sfc::fwiou({{5, 0}, {0, 11}}) == doctest::Approx(1.0));

  // Two classes: t0=10 (IoU 8/(10+9-8)=8/11), t1=5 (IoU 4/(5+6-4)=4/7).
  const double expect = (10.0 * 8.0 / 11.0 + 5.0 * 4.0 / 7.0) / 15.0;
  CHECK(sfc::fwiou({{8, 2}, {1, 4}}) ==
        doctest::Approx(expect).epsilon(1e-12));

  // A class absent from the reference contributes nothing.
  CHECK(sfc::fwiou({{4, 0}, {0, 0}}) == doctest::Approx(1.0));

  CHECK_THROWS_AS(sfc::fwiou({{1, 2}}), sfc::ShapeError);
  CHECK_THROWS_AS(sfc::fwiou({}), sfc::ShapeError);
}

TEST_CASE("mos is the plain mean of the raw scores") {
  const std::vector<double> scores = {1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(sfc::mos(scores) == 3.0);
  const std::vector<double> one = {4.25};
  CHECK(sfc::mos(one) == 4.25);
  CHECK_THROWS_AS(sfc::mos(std::vector<double>{}), sfc::ShapeError);
}
