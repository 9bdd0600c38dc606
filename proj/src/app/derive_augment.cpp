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

#include "app_internal.hpp"
#include "prioritycut/augment.hpp"
#include "prioritycut/mask_core.hpp"

namespace prioritycut::app {

namespace fs = std::filesystem;

namespace {

void check_frame_shape(const std::string& what, std::size_t h, std::size_t w, std::size_t expect_h,
                       std::size_t expect_w) {
  if (h != expect_h || w != expect_w) {
    throw ShapeError(what + " is " + shape_string(h, w) + ", expected " + shape_string(expect_h, expect_w));
  }
}

}  // namespace

int derive_mask(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    validate_common(cfg);
    const auto frames = pair_frames({{"occlusion", require_dir(cfg.occlusion_dir, "--occlusion")},
                                     {"background", require_dir(cfg.background_dir, "--background")}});
    prepare_out_dir(cfg.out_dir);
    const auto tau = static_cast<float>(cfg.tau);

    auto outcomes = run_frames(frames.size(), cfg.jobs, [&](std::size_t i) {
      const FrameSet& frame = frames[i];
      const AlphaMask occlusion = io::load_mask(frame.files[0]);
      const AlphaMask background = io::load_mask(frame.files[1]);
      check_frame_shape("background mask", background.height(), background.width(), occlusion.height(),
                        occlusion.width());

      RngState rng = RngState::for_stream(cfg.seed, i);
      const PercentileK k = frame_k(cfg, rng);
      const BinaryMask binary_bg = binarize_background(background, tau);
      const AlphaMask fg_occlusion = foreground_occlusion(binary_bg, occlusion);
      const BinaryMask mask = topk_occluded_mask(fg_occlusion, k);

      nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
      const auto write = [&](const std::string& name, const auto& tensor) {
        io::save_tensor(tensor, cfg.out_dir / name);
        outputs.push_back(name);
      };
      write(frame.stem + ".mask.pct1", mask);
      io::save_png8(mask, cfg.out_dir / (frame.stem + ".mask.png"));
      outputs.push_back(frame.stem + ".mask.png");
      if (cfg.keep_intermediates) {
        write(frame.stem + ".bg_binary.pct1", binary_bg);
        write(frame.stem + ".fg_occlusion.pct1", fg_occlusion);
      }

      nlohmann::ordered_json entry;
      entry["frame"] = frame.stem;
      entry["stream"] = i;
      entry["inputs"] = {frame.files[0].filename().string(), frame.files[1].filename().string()};
      entry["k"] = k.value();
      entry["zero_pixels"] = mask.count_zeros();
      entry["pixels"] = mask.size();
      entry["outputs"] = std::move(outputs);
      return entry;
    });

    nlohmann::ordered_json manifest = run_header("derive-mask", cfg);
    const bool failed = collect_outcomes(frames, outcomes, manifest, log);
    write_text(cfg.out_dir / "manifest.json", manifest.dump(2) + "\n");
    out << "derive-mask: " << manifest["frames"].size() << " of " << frames.size() << " frames written to "
        << cfg.out_dir.string() << "\n";
    return failed ? kExitFrameFailure : kExitOk;
  });
}

int augment(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    validate_common(cfg);
    if (cfg.lambda && !(*cfg.lambda >= 0.0 && *cfg.lambda <= 1.0)) throw ConfigError("--lambda must be in [0, 1]");
    std::optional<AugmentSchedule> schedule;
    if (cfg.epoch) {
      try {
        schedule = AugmentSchedule(cfg.warmup_epochs, cfg.max_probability);
      } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
      }
    }

    std::vector<FrameSource> sources = {{"driving", require_dir(cfg.driving_dir, "--driving")}};
    if (cfg.method != Method::kCutout) sources.push_back({"generated", require_dir(cfg.generated_dir, "--generated")});
    if (cfg.method == Method::kPriorityCut) {
      sources.push_back({"occlusion", require_dir(cfg.occlusion_dir, "--occlusion")});
      sources.push_back({"background", require_dir(cfg.background_dir, "--background")});
    }
    const auto frames = pair_frames(sources);
    prepare_out_dir(cfg.out_dir);
    const auto tau = static_cast<float>(cfg.tau);

    auto outcomes = run_frames(frames.size(), cfg.jobs, [&](std::size_t i) {
      const FrameSet& frame = frames[i];
      const ImageTensor driving = io::load_image(frame.files[0]);
      const std::size_t h = driving.height();
      const std::size_t w = driving.width();

      RngState rng = RngState::for_stream(cfg.seed, i);
      nlohmann::ordered_json entry;
      entry["frame"] = frame.stem;
      entry["stream"] = i;
      entry["method"] = to_string(cfg.method);
      nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
      for (const auto& f : frame.files) inputs.push_back(f.filename().string());
      entry["inputs"] = std::move(inputs);

      bool applied = true;
      if (schedule) {
        const double p = augmentation_probability(*cfg.epoch, *schedule);
        applied = draw_gate(rng, p);
        entry["epoch"] = *cfg.epoch;
        entry["probability"] = p;
      }

      ImageTensor image;
      AlphaMask mask;
      switch (cfg.method) {
        case Method::kPriorityCut: {
          const ImageTensor generated = io::load_image(frame.files[1]);
          const AlphaMask occlusion = io::load_mask(frame.files[2]);
          const AlphaMask background = io::load_mask(frame.files[3]);
          check_frame_shape("occlusion mask", occlusion.height(), occlusion.width(), h, w);
          check_frame_shape("background mask", background.height(), background.width(), h, w);
          const PercentileK k = frame_k(cfg, rng);
          entry["k"] = k.value();
          AugmentedFrame result = prioritycut_augment(driving, generated, occlusion, background, k, tau);
          image = std::move(result.image);
          mask = result.mask.as_alpha();
          break;
        }
        case Method::kCutMix: {
          const ImageTensor generated = io::load_image(frame.files[1]);
          const double lambda = cfg.lambda ? *cfg.lambda : rng.uniform01();
          entry["lambda"] = lambda;
          const BinaryMask cut = cutmix_mask(h, w, lambda, rng);
          image = mix(driving, generated, cut);
          mask = cut.as_alpha();
          break;
        }
        case Method::kCutout: {
          const std::size_t side = cfg.cutout_side ? cfg.cutout_side : std::max<std::size_t>(1, std::min(h, w) / 2);
          entry["side"] = side;
          const BinaryMask hole = cutout_mask(h, w, side, rng);
          image = fill_where_zero(driving, hole, cfg.fill);
          mask = hole.as_alpha();
          break;
        }
        case Method::kMixup: {
          const ImageTensor generated = io::load_image(frame.files[1]);
          const double lambda = cfg.lambda ? *cfg.lambda : rng.uniform01();
          entry["lambda"] = lambda;
          image = mixup(driving, generated, lambda);
          mask = AlphaMask::filled(h, w, static_cast<float>(lambda));
          break;
        }
      }
      if (!applied) {
        image = driving;
        mask = AlphaMask::filled(h, w, 1.0f);
      }
      entry["applied"] = applied;

      io::save_tensor(image, cfg.out_dir / (frame.stem + ".aug.pct1"));
      io::save_png8(image, cfg.out_dir / (frame.stem + ".aug.png"));
      io::save_tensor(mask, cfg.out_dir / (frame.stem + ".mask.pct1"));
      entry["outputs"] = {frame.stem + ".aug.pct1", frame.stem + ".aug.png", frame.stem + ".mask.pct1"};
      return entry;
    });

    nlohmann::ordered_json manifest = run_header("augment", cfg);
    manifest["method"] = to_string(cfg.method);
    const bool failed = collect_outcomes(frames, outcomes, manifest, log);
    write_text(cfg.out_dir / "manifest.json", manifest.dump(2) + "\n");
    out << "augment: " << manifest["frames"].size() << " of " << frames.size() << " frames written to "
        << cfg.out_dir.string() << "\n";
    return failed ? kExitFrameFailure : kExitOk;
  });
}

}  // namespace prioritycut::app
