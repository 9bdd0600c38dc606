/**
 * Copyright 2026 The prioritycut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the license.
 */

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "prioritycut/error.hpp"
#include "prioritycut/mask_core.hpp"
#include "prioritycut/metrics.hpp"

using namespace prioritycut;
namespace m = prioritycut::metrics;

TEST_SUITE("metrics") {
  TEST_CASE("l1") {
    const ImageTensor a = ImageTensor::filled(4, 4, 3, 0.75f);
    CHECK(m::l1(a, a) == 0.0);
    CHECK(m::l1(a, ImageTensor::filled(4, 4, 3, 0.25f)) == 0.5);
    // Half the pixels differ by 0.25, half are equal: mean 0.125.
    std::vector<float> half(8, 0.5f);
    for (std::size_t i = 0; i < 4; ++i) half[i] = 0.75f;
    CHECK(m::l1(ImageTensor(2, 4, 1, half), ImageTensor::filled(2, 4, 1, 0.5f)) == 0.125);
    std::vector<float> tenth(8, 0.5f);
    for (std::size_t i = 0; i < 4; ++i) tenth[i] = 0.7f;
    CHECK(m::l1(ImageTensor(2, 4, 1, tenth), ImageTensor::filled(2, 4, 1, 0.5f)) == doctest::Approx(0.1).epsilon(1e-6));
    CHECK_THROWS_AS(m::l1(a, ImageTensor::filled(4, 4, 1, 0.0f)), ShapeError);
  }

  TEST_CASE("psnr") {
    const ImageTensor a = ImageTensor::filled(4, 4, 1, 0.3f);
    CHECK(m::psnr(a, a) == m::kPsnrInfinity);
    CHECK(m::psnr(ImageTensor::filled(2, 2, 1, 1.0f), ImageTensor::filled(2, 2, 1, 0.0f)) == 0.0);
    // Differ by 0.5 with L = 0.5: MSE = L^2.
    CHECK(m::psnr(ImageTensor::filled(2, 2, 1, 0.5f), ImageTensor::filled(2, 2, 1, 0.0f), 0.5) == 0.0);
    const double diff = static_cast<double>(0.3f) - static_cast<double>(0.2f);
    CHECK(m::psnr(a, ImageTensor::filled(4, 4, 1, 0.2f)) == doctest::Approx(10.0 * std::log10(1.0 / (diff * diff))));
    CHECK(m::psnr(a, ImageTensor::filled(4, 4, 1, 0.2f)) == doctest::Approx(20.0).epsilon(1e-6));
    CHECK_THROWS_AS(m::psnr(a, a, 0.0), ArgumentError);
  }

  TEST_CASE("ssim examples") {
    std::mt19937_64 gen(41);
    const ImageTensor a = oracle::random_image(gen, 16, 16, 3);
    CHECK(m::ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    // Constant images: contrast and structure terms are exactly C2 / C2.
    const double c1 = 0.01 * 0.01;
    const double got = m::ssim(ImageTensor::filled(12, 12, 1, 0.5f), ImageTensor::filled(12, 12, 1, 0.0f));
    CHECK(got == doctest::Approx(c1 / (0.25 + c1)).epsilon(1e-9));
    CHECK(got == doctest::Approx(0.000400).epsilon(1e-3));

    CHECK_THROWS_AS(m::ssim(ImageTensor::filled(10, 20, 1, 0.f), ImageTensor::filled(10, 20, 1, 0.f)), ArgumentError);
    m::SsimParams even;
    even.window = 10;
    CHECK_THROWS_AS(m::ssim(a, a, even), ArgumentError);
    m::SsimParams bad_sigma;
    bad_sigma.sigma = 0.0;
    CHECK_THROWS_AS(m::ssim(a, a, bad_sigma), ArgumentError);
  }

  TEST_CASE("property: ssim bounded, symmetric, and equal to the naive reference") {
    std::mt19937_64 gen(42);
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t h = 11 + gen() % 10, w = 11 + gen() % 10, c = trial % 2 ? 3 : 1;
      const ImageTensor a = oracle::random_image(gen, h, w, c);
      const ImageTensor b = oracle::random_image(gen, h, w, c);
      const double s = m::ssim(a, b);
      CHECK(s >= -1.0);
      CHECK(s <= 1.0);
      CHECK(s == m::ssim(b, a));
      CHECK(s == doctest::Approx(oracle::naive_ssim(a, b, 11, 1.5, 0.01, 0.03, 1.0)).epsilon(1e-9));
      CHECK(m::psnr(a, b) == m::psnr(b, a));
      CHECK(m::psnr(a, b) == doctest::Approx(oracle::naive_psnr(a, b, 1.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("masked_psnr") {
    const ImageTensor a(1, 2, 1, {0.5f, 0.5f});
    const ImageTensor b(1, 2, 1, {0.4f, 0.2f});
    const double d = static_cast<double>(0.5f) - static_cast<double>(0.4f);
    const double expect = 10.0 * std::log10(1.0 / (d * d));
    CHECK(m::masked_psnr(a, b, AlphaMask(1, 2, {1.0f, 0.0f})) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(m::masked_psnr(a, b, AlphaMask(1, 2, {1.0f, 0.0f})) == doctest::Approx(20.0).epsilon(1e-5));

    const ImageTensor c(1, 2, 1, {0.5f, 0.9f});
    CHECK(m::masked_psnr(a, c, AlphaMask(1, 2, {1.0f, 0.0f})) == m::kPsnrInfinity);
    CHECK_THROWS_AS(m::masked_psnr(a, b, AlphaMask::filled(1, 2, 0.0f)), ArgumentError);
  }

  TEST_CASE("masked_ssim") {
    std::mt19937_64 gen(43);
    const ImageTensor a = oracle::random_image(gen, 15, 13, 3);
    const ImageTensor b = oracle::random_image(gen, 15, 13, 3);
    const AlphaMask mask = oracle::random_alpha(gen, 15, 13);
    CHECK(m::masked_ssim(a, a, mask) == doctest::Approx(1.0).epsilon(1e-12));

    // Constant SSIM map: weighted mean equals the constant for any mask.
    const ImageTensor p = ImageTensor::filled(12, 12, 1, 0.5f);
    const ImageTensor q = ImageTensor::filled(12, 12, 1, 0.0f);
    const double s = m::ssim(p, q);
    CHECK(m::masked_ssim(p, q, oracle::random_alpha(gen, 12, 12)) == doctest::Approx(s).epsilon(1e-12));

    // Zero everywhere except a border pixel never reached by a window centre.
    std::vector<float> border(15 * 13, 0.0f);
    border[0] = 1.0f;
    CHECK_THROWS_AS(m::masked_ssim(a, b, AlphaMask(15, 13, border)), ArgumentError);
  }

  TEST_CASE("property: all-ones masks reduce to the unmasked metrics") {
    std::mt19937_64 gen(44);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t h = 11 + gen() % 12, w = 11 + gen() % 12;
      const ImageTensor a = oracle::random_image(gen, h, w, 3);
      const ImageTensor b = oracle::random_image(gen, h, w, 3);
      const AlphaMask ones = AlphaMask::filled(h, w, 1.0f);
      CHECK(std::abs(m::masked_psnr(a, b, ones) - m::psnr(a, b)) <= 1e-9);
      CHECK(std::abs(m::masked_ssim(a, b, ones) - m::ssim(a, b)) <= 1e-9);
    }
  }

  TEST_CASE("property: mask and its inversion recombine to the global value") {
    std::mt19937_64 gen(45);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t h = 16, w = 16;
      const ImageTensor a = oracle::random_image(gen, h, w, 1);
      const ImageTensor b = oracle::random_image(gen, h, w, 1);
      const BinaryMask top = topk_occluded_mask(oracle::random_alpha(gen, h, w), PercentileK(50));
      const BinaryMask rest = invert_mask(top);

      const double n_top = static_cast<double>(top.size() - top.count_zeros());
      const double n_rest = static_cast<double>(rest.size() - rest.count_zeros());
      const double recombined_mse =
          (n_top * m::masked_mse(a, b, top.as_alpha()) + n_rest * m::masked_mse(a, b, rest.as_alpha())) /
          (n_top + n_rest);
      CHECK(recombined_mse == doctest::Approx(m::mse(a, b)).epsilon(1e-12));

      // SSIM weights are the interior mask sums.
      const m::SsimMap map = m::ssim_map(a, b);
      double w_top = 0.0, w_rest = 0.0;
      for (std::size_t r = 0; r < map.height; ++r)
        for (std::size_t c = 0; c < map.width; ++c) {
          w_top += top.at(r + map.offset, c + map.offset);
          w_rest += rest.at(r + map.offset, c + map.offset);
        }
      if (w_top == 0.0 || w_rest == 0.0) continue;
      const double recombined_ssim =
          (w_top * m::masked_ssim(a, b, top.as_alpha()) + w_rest * m::masked_ssim(a, b, rest.as_alpha())) /
          (w_top + w_rest);
      CHECK(recombined_ssim == doctest::Approx(m::ssim(a, b)).epsilon(1e-12));
    }
  }

  TEST_CASE("harden") {
    const AlphaMask soft(1, 4, {0.0f, 0.49f, 0.5f, 0.9f});
    CHECK(m::harden(soft) == AlphaMask(1, 4, {0.0f, 0.0f, 1.0f, 1.0f}));
  }

  TEST_CASE("akd") {
    const KeypointSequence gt({{{1, 2, true}, {3, 4, true}}, {{0, 0, true}, {5, 5, true}}});
    CHECK(m::akd(gt, gt) == 0.0);
    const KeypointSequence shifted({{{4, 6, true}, {6, 8, true}}, {{3, 4, true}, {8, 9, true}}});
    CHECK(m::akd(gt, shifted) == 5.0);
    // A pair missing in the ground truth does not enter the mean.
    const KeypointSequence gt_missing({{{1, 2, false}, {3, 4, true}}, {{0, 0, true}, {5, 5, true}}});
    const KeypointSequence far({{{100, 200, true}, {6, 8, true}}, {{3, 4, true}, {8, 9, true}}});
    CHECK(m::akd(gt_missing, far) == 5.0);
    const KeypointSequence none({{{0, 0, false}, {0, 0, false}}, {{0, 0, false}, {0, 0, false}}});
    CHECK_THROWS_AS(m::akd(gt, none), ArgumentError);
    CHECK_THROWS_AS(m::akd(gt, KeypointSequence({{{1, 2, true}, {3, 4, true}}})), ShapeError);
    CHECK(m::akd_frame(gt[0], shifted[0]) == 5.0);
    CHECK_FALSE(m::akd_frame(gt[0], none[0]).has_value());
  }

  TEST_CASE("mkr") {
    const KeypointSequence gt({{{0, 0, true}, {0, 0, true}}, {{0, 0, true}, {0, 0, true}}});
    CHECK(m::mkr(gt, gt) == 0.0);
    const KeypointSequence none({{{0, 0, false}, {0, 0, false}}, {{0, 0, false}, {0, 0, false}}});
    CHECK(m::mkr(gt, none) == 1.0);
    const KeypointSequence one_missing({{{0, 0, true}, {0, 0, false}}, {{0, 0, true}, {0, 0, true}}});
    CHECK(m::mkr(gt, one_missing) == 0.25);
    // Points the ground truth misses are outside the denominator.
    const KeypointSequence gt3({{{0, 0, true}, {0, 0, false}}, {{0, 0, true}, {0, 0, true}}});
    CHECK(m::mkr(gt3, none) == 1.0);
    CHECK_THROWS_AS(m::mkr(none, gt), ArgumentError);
  }

  TEST_CASE("aed") {
    const EmbeddingSequence gt({{0, 0, 0}, {1, 1, 1}});
    CHECK(m::aed(gt, gt) == 0.0);
    CHECK(m::aed(gt, EmbeddingSequence({{3, 4, 0}, {4, 5, 1}})) == 5.0);
    CHECK(m::aed(gt, EmbeddingSequence({{0, 0, 0}, {1, 3, 1}})) == 1.0);
    CHECK_THROWS_AS(m::aed(gt, EmbeddingSequence({{0, 0}, {1, 1}})), ShapeError);
    CHECK_THROWS_AS(m::aed(gt, EmbeddingSequence({{0, 0, 0}})), ShapeError);
  }

  TEST_CASE("aggregate") {
    const double one[] = {3.5};
    CHECK(m::aggregate(one) == m::Summary{3.5, 1, 0.0});
    const double constants[] = {2.0, 2.0, 2.0};
    CHECK(m::aggregate(constants).ci95 == 0.0);
    const double pair[] = {0.0, 2.0};
    const m::Summary s = m::aggregate(pair);
    CHECK(s.mean == 1.0);
    CHECK(s.count == 2);
    CHECK(s.ci95 == doctest::Approx(1.96).epsilon(1e-15));
    CHECK_THROWS_AS(m::aggregate(std::span<const double>{}), ArgumentError);
    const double inf[] = {1.0, m::kPsnrInfinity};
    CHECK_THROWS_AS(m::aggregate(inf), ArgumentError);
  }

  TEST_CASE("property: aggregate is order independent within 1e-9") {
    std::mt19937_64 gen(46);
    std::vector<double> v(500);
    std::uniform_real_distribution<double> u(0.0, 40.0);
    for (double& x : v) x = u(gen);
    const m::Summary a = m::aggregate(v);
    std::shuffle(v.begin(), v.end(), gen);
    const m::Summary b = m::aggregate(v);
    CHECK(std::abs(a.mean - b.mean) <= 1e-9);
    CHECK(std::abs(a.ci95 - b.ci95) <= 1e-9);
  }

  TEST_CASE("identical inputs give the ideal value for every metric") {
    std::mt19937_64 gen(47);
    const ImageTensor a = oracle::random_image(gen, 12, 12, 3);
    CHECK(m::l1(a, a) == 0.0);
    CHECK(m::psnr(a, a) == m::kPsnrInfinity);
    CHECK(m::ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    const KeypointSequence kp({{{1, 1, true}, {2, 2, false}}});
    CHECK(m::akd(kp, kp) == 0.0);
    CHECK(m::mkr(kp, kp) == 0.0);
    const EmbeddingSequence e({{0.5, 0.25}});
    CHECK(m::aed(e, e) == 0.0);
  }
}
