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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "prioritycut/augment.hpp"
#include "prioritycut/mask_core.hpp"
#include "prioritycut/metrics.hpp"
#include "prioritycut/regularization.hpp"
#include "prioritycut/tensor_io.hpp"
#include "temp_dir.hpp"

using namespace prioritycut;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Outcome topk_oracle() {
  std::mt19937_64 gen(1001);
  std::size_t mismatches = 0, wrong_count = 0;
  const auto start = Clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t h = 1 + gen() % 16, w = 1 + gen() % 16;
    const int k = static_cast<int>(gen() % 101);
    const AlphaMask a = trial % 2 ? oracle::random_quantized_alpha(gen, h, w, 2 + static_cast<int>(gen() % 8))
                                  : oracle::random_alpha(gen, h, w);
    const BinaryMask mask = topk_occluded_mask(a, PercentileK(k));
    std::set<std::size_t> zeros;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i] == 0.0f) zeros.insert(i);
    const std::vector<float> values(a.data().begin(), a.data().end());
    if (zeros != oracle::brute_force_topk(values, k)) ++mismatches;
    if (zeros.size() != static_cast<std::size_t>(k) * h * w / 100) ++wrong_count;
  }
  const double ms = elapsed_ms(start);
  return {mismatches == 0 && wrong_count == 0 && ms < 10000.0,
          "1000 cases, " + std::to_string(mismatches) + " mismatches, " + std::to_string(wrong_count) +
              " wrong cardinalities, " + std::to_string(ms) + " ms"};
}

Outcome foreground_identities() {
  std::mt19937_64 gen(1002);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t h = 1 + gen() % 32, w = 1 + gen() % 32;
    const BinaryMask bg = binarize_background(oracle::random_alpha(gen, h, w));
    const AlphaMask occ = oracle::random_alpha(gen, h, w);
    const AlphaMask fg = foreground_occlusion(bg, occ);
    for (std::size_t i = 0; i < fg.size(); ++i) {
      const double expect = bg[i] == 1.0f ? 1.0 : static_cast<double>(occ[i]);
      worst = std::max(worst, std::abs(static_cast<double>(fg[i]) - expect));
    }
  }
  return {worst <= 1e-12, "max deviation " + std::to_string(worst)};
}

Outcome pipeline_partition() {
  std::mt19937_64 gen(1003);
  std::size_t bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ImageTensor driving = oracle::random_image(gen, 64, 64, 3);
    const ImageTensor generated = oracle::random_image(gen, 64, 64, 3);
    const AlphaMask occ = oracle::random_alpha(gen, 64, 64);
    const AlphaMask bg = oracle::random_alpha(gen, 64, 64);
    const AugmentedFrame out =
        prioritycut_augment(driving, generated, occ, bg, PercentileK(static_cast<double>(gen() % 101)));
    for (std::size_t y = 0; y < 64; ++y)
      for (std::size_t x = 0; x < 64; ++x)
        for (std::size_t c = 0; c < 3; ++c) {
          const ImageTensor& src = out.mask.at(y, x) == 0.0f ? generated : driving;
          const float got = out.image.at(y, x, c), want = src.at(y, x, c);
          if (std::memcmp(&got, &want, sizeof(float)) != 0) ++bad;
        }
  }
  return {bad == 0, "100 quadruples at 64x64, " + std::to_string(bad) + " non-identical samples"};
}

Outcome k30_fraction() {
  std::mt19937_64 gen(1004);
  bool ok = true;
  std::string detail;
  // Exactly 0.30 where 30% of the pixels is a whole count; floor count otherwise.
  for (auto [h, w] : {std::pair<std::size_t, std::size_t>{10, 10}, {64, 40}, {100, 256}, {256, 256}, {7, 9}}) {
    const BinaryMask m =
        derive_prioritycut_mask(oracle::random_alpha(gen, h, w), oracle::random_alpha(gen, h, w), PercentileK(30));
    const std::size_t n = h * w;
    const double fraction = static_cast<double>(m.count_zeros()) / static_cast<double>(n);
    ok = ok && m.count_zeros() == 30 * n / 100;
    if (30 * n % 100 == 0) ok = ok && fraction == 0.30;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%zux%zu: %zu/%zu=%.6f; ", h, w, m.count_zeros(), n, fraction);
    detail += buf;
  }
  return {ok, detail};
}

Outcome consistency_zero() {
  std::mt19937_64 gen(1005);
  std::normal_distribution<float> normal(0.0f, 3.0f);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t h = 1 + gen() % 32, w = 1 + gen() % 32;
    std::vector<float> r(h * w), f(h * w);
    for (float& v : r) v = normal(gen);
    for (float& v : f) v = normal(gen);
    const PredictionMap real(h, w, r), fake(h, w, f);
    const AlphaMask alpha = oracle::random_alpha(gen, h, w);
    const BinaryMask binary = oracle::random_binary(gen, h, w);
    worst = std::max(worst, consistency_loss(mix_predictions(real, fake, alpha), real, fake, alpha));
    worst = std::max(worst, consistency_loss(mix_predictions(real, fake, binary), real, fake, binary));
  }
  const double hand = consistency_loss(PredictionMap(1, 2, {1, 0}), PredictionMap(1, 2, {0, 0}),
                                       PredictionMap(1, 2, {0, 1}), BinaryMask(1, 2, {1, 0}));
  return {worst <= 1e-12 && hand == 2.0,
          "max zero-case loss " + std::to_string(worst) + ", hand case " + std::to_string(hand)};
}

Outcome metric_references() {
  std::mt19937_64 gen(1006);
  double psnr_dev = 0.0, ssim_dev = 0.0, masked_dev = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const ImageTensor a = oracle::random_image(gen, 32, 32, trial % 2 ? 3 : 1);
    const ImageTensor b = oracle::random_image(gen, 32, 32, trial % 2 ? 3 : 1);
    psnr_dev = std::max(psnr_dev, std::abs(metrics::psnr(a, b) - oracle::naive_psnr(a, b, 1.0)));
    ssim_dev = std::max(ssim_dev, std::abs(metrics::ssim(a, b) - oracle::naive_ssim(a, b, 11, 1.5, 0.01, 0.03, 1.0)));
    const AlphaMask ones = AlphaMask::filled(32, 32, 1.0f);
    masked_dev = std::max(masked_dev, std::abs(metrics::masked_psnr(a, b, ones) - metrics::psnr(a, b)));
    masked_dev = std::max(masked_dev, std::abs(metrics::masked_ssim(a, b, ones) - metrics::ssim(a, b)));
  }
  const KeypointSequence gt({{{1, 1, true}, {10, 20, true}}});
  const KeypointSequence shifted({{{4, 5, true}, {13, 24, true}}});
  const double akd = metrics::akd(gt, shifted);
  const KeypointSequence gt4({{{0, 0, true}, {0, 0, true}}, {{0, 0, true}, {0, 0, true}}});
  const KeypointSequence gen4({{{0, 0, true}, {0, 0, false}}, {{0, 0, true}, {0, 0, true}}});
  const double mkr = metrics::mkr(gt4, gen4);
  const bool ok = psnr_dev <= 1e-6 && ssim_dev <= 1e-6 && masked_dev <= 1e-9 && std::abs(akd - 5.0) <= 1e-12 &&
                  mkr == 0.25;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "psnr dev %.3g, ssim dev %.3g, all-ones dev %.3g, akd %.15g, mkr %.15g", psnr_dev,
                ssim_dev, masked_dev, akd, mkr);
  return {ok, buf};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PRIORITYCUT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome cli_determinism() {
  testing::TempDir dir;
  for (const char* sub : {"driving", "generated", "occlusion", "background"}) fs::create_directories(dir / sub);
  std::mt19937_64 gen(1007);
  for (int i = 0; i < 12; ++i) {
    const std::string stem = "f" + std::to_string(100 + i);
    const ImageTensor d = oracle::random_image(gen, 40, 36, 3);
    io::save_png8(d, dir / "driving" / (stem + ".png"));
    io::save_tensor(oracle::random_image(gen, 40, 36, 3), dir / "generated" / (stem + ".pct1"));
    io::save_tensor(oracle::random_quantized_alpha(gen, 40, 36, 12), dir / "occlusion" / (stem + ".pct1"));
    io::save_tensor(oracle::random_alpha(gen, 40, 36), dir / "background" / (stem + ".pct1"));
  }
  const auto pipeline = [&](const fs::path& out, int jobs) {
    const std::string j = " --jobs " + std::to_string(jobs);
    int rc = run_cli("derive-mask --occlusion " + q(dir / "occlusion") + " --background " + q(dir / "background") +
                     " --seed 11 --keep-intermediates --out " + q(out / "masks") + j);
    rc |= run_cli("augment --method prioritycut --driving " + q(dir / "driving") + " --generated " +
                  q(dir / "generated") + " --occlusion " + q(dir / "occlusion") + " --background " +
                  q(dir / "background") + " --seed 11 --epoch 3 --out " + q(out / "aug") + j);
    rc |= run_cli("augment --method cutmix --driving " + q(dir / "driving") + " --generated " +
                  q(dir / "generated") + " --seed 11 --out " + q(out / "cutmix") + j);
    rc |= run_cli("evaluate --ground-truth " + q(dir / "driving") + " --generated " + q(dir / "generated") +
                  " --mask-mode topk --mask-mode neg-topk --k 30 --occlusion " + q(dir / "occlusion") +
                  " --background " + q(dir / "background") + " --format json --out " + q(out / "eval") + j);
    return rc;
  };
  const fs::path runs[] = {dir / "run_j1", dir / "run_j4", dir / "run_j3"};
  const int jobs[] = {1, 4, 3};
  for (std::size_t r = 0; r < 3; ++r) {
    if (pipeline(runs[r], jobs[r]) != 0) return {false, "a CLI step failed for --jobs " + std::to_string(jobs[r])};
  }
  std::size_t files = 0, differing = 0;
  for (const auto& e : fs::recursive_directory_iterator(runs[0])) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), runs[0]);
    const std::string ref = testing::read_bytes(e.path());
    for (std::size_t r = 1; r < 3; ++r) {
      if (!fs::exists(runs[r] / rel) || testing::read_bytes(runs[r] / rel) != ref) ++differing;
    }
    ++files;
  }
  return {files > 0 && differing == 0,
          std::to_string(files) + " files per run, --jobs {1,4,3}, " + std::to_string(differing) + " differing"};
}

Outcome throughput() {
  std::mt19937_64 gen(1008);
  const ImageTensor driving = oracle::random_image(gen, 256, 256, 3);
  const ImageTensor generated = oracle::random_image(gen, 256, 256, 3);
  const AlphaMask occ = oracle::random_alpha(gen, 256, 256);
  const AlphaMask bg = oracle::random_alpha(gen, 256, 256);
  std::vector<double> times;
  float sink = 0.0f;
  for (int rep = 0; rep < 61; ++rep) {
    const auto start = Clock::now();
    const BinaryMask m = derive_prioritycut_mask(occ, bg, PercentileK(30));
    const ImageTensor out = mix(driving, generated, m);
    times.push_back(elapsed_ms(start));
    sink += out.at(0, 0, 0);
  }
  std::nth_element(times.begin(), times.begin() + 30, times.end());
  const double median = times[30];
  char buf[128];
  std::snprintf(buf, sizeof(buf), "256x256 RGB median %.3f ms over 61 runs%s", median, sink < 0 ? "!" : "");
  return {median < 5.0, buf};
}

Outcome schedule() {
  const AugmentSchedule s;
  const std::size_t n = AugmentSchedule::kDefaultWarmupEpochs;
  const double p0 = augmentation_probability(0, s);
  const double half = augmentation_probability(n / 2, s);
  const double full = augmentation_probability(n, s);
  const double late = augmentation_probability(10 * n, s);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "n=%zu: p(0)=%g p(n/2)=%g p(n)=%g p(10n)=%g", n, p0, half, full, late);
  return {p0 == 0.0 && half == 0.25 && full == 0.5 && late == 0.5, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"topk-oracle", topk_oracle},
      {"foreground-occlusion-identities", foreground_identities},
      {"pipeline-partition", pipeline_partition},
      {"k30-zero-fraction", k30_fraction},
      {"consistency-loss", consistency_zero},
      {"metric-reference-agreement", metric_references},
      {"cli-determinism", cli_determinism},
      {"throughput", throughput},
      {"schedule", schedule},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
