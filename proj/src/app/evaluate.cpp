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

#include <algorithm>
#include <cmath>
#include <set>

#include "app_internal.hpp"
#include "prioritycut/mask_core.hpp"
#include "prioritycut/metrics.hpp"
#include "prioritycut/report.hpp"

namespace prioritycut::app {

namespace fs = std::filesystem;

namespace {

const std::set<std::string, std::less<>> kKnownMetrics = {"l1", "psnr", "ssim", "m-psnr", "m-ssim",
                                                           "akd", "mkr", "aed"};

struct Selection {
  bool l1 = false, psnr = false, ssim = false, m_psnr = false, m_ssim = false;
  bool akd = false, mkr = false, aed = false;
};

Selection select_metrics(const RunConfig& cfg) {
  const bool masks = !cfg.mask_modes.empty();
  const bool keypoints = !cfg.gt_keypoints.empty() || !cfg.gen_keypoints.empty();
  const bool embeddings = !cfg.gt_embeddings.empty() || !cfg.gen_embeddings.empty();
  Selection s;
  if (cfg.metrics.empty()) {
    s = {true, true, true, masks, masks, keypoints, keypoints, embeddings};
  } else {
    for (const std::string& name : cfg.metrics) {
      if (!kKnownMetrics.count(name)) throw ConfigError("unknown metric '" + name + "'");
    }
    const auto has = [&](std::string_view n) {
      return std::find(cfg.metrics.begin(), cfg.metrics.end(), n) != cfg.metrics.end();
    };
    s = {has("l1"), has("psnr"), has("ssim"), has("m-psnr"), has("m-ssim"), has("akd"), has("mkr"), has("aed")};
  }
  if ((s.m_psnr || s.m_ssim) && !masks) throw ConfigError("masked metrics need at least one --mask-mode");
  if ((s.akd || s.mkr) && (cfg.gt_keypoints.empty() || cfg.gen_keypoints.empty())) {
    throw ConfigError("akd/mkr need --gt-keypoints and --gen-keypoints");
  }
  if (s.aed && (cfg.gt_embeddings.empty() || cfg.gen_embeddings.empty())) {
    throw ConfigError("aed needs --gt-embeddings and --gen-embeddings");
  }
  return s;
}

// Ordered metric names of the report, matching the per-frame value keys.
std::vector<std::string> image_metric_names(const RunConfig& cfg, const Selection& s) {
  std::vector<std::string> names;
  if (s.l1) names.emplace_back("l1");
  if (s.psnr) names.emplace_back("psnr");
  if (s.ssim) names.emplace_back("ssim");
  for (MaskMode mode : cfg.mask_modes) {
    const std::string suffix = "[" + std::string(to_string(mode)) + "]";
    if (s.m_psnr) names.push_back("m-psnr" + suffix);
    if (s.m_ssim) names.push_back("m-ssim" + suffix);
  }
  return names;
}

double sum_of(const AlphaMask& m) {
  double total = 0.0;
  for (float v : m.data()) total += v;
  return total;
}

struct SequenceMetric {
  std::string name;
  std::vector<std::optional<double>> per_frame;
};

}  // namespace

int evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    validate_common(cfg);
    const Selection sel = select_metrics(cfg);
    std::vector<MaskMode> modes = cfg.mask_modes;
    if (std::set<MaskMode>(modes.begin(), modes.end()).size() != modes.size()) {
      throw ConfigError("--mask-mode given twice with the same value");
    }

    std::vector<FrameSource> sources = {{"ground-truth", require_dir(cfg.ground_truth_dir, "--ground-truth")},
                                        {"generated", require_dir(cfg.generated_dir, "--generated")}};
    const bool need_salient = std::count(modes.begin(), modes.end(), MaskMode::kSalient) > 0;
    const bool need_topk = std::count(modes.begin(), modes.end(), MaskMode::kTopK) > 0 ||
                           std::count(modes.begin(), modes.end(), MaskMode::kNegTopK) > 0;
    std::size_t salient_slot = 0, occlusion_slot = 0, background_slot = 0;
    if (need_salient) {
      salient_slot = sources.size();
      sources.push_back({"salient masks", require_dir(cfg.salient_mask_dir, "--salient-masks")});
    }
    std::optional<PercentileK> topk_k;
    if (need_topk) {
      if (!cfg.k) throw ConfigError("--mask-mode topk/neg-topk needs a fixed --k");
      topk_k = PercentileK(*cfg.k);
      occlusion_slot = sources.size();
      sources.push_back({"occlusion", require_dir(cfg.occlusion_dir, "--occlusion")});
      if (!cfg.background_dir.empty()) {
        background_slot = sources.size();
        sources.push_back({"background", require_dir(cfg.background_dir, "--background")});
      }
    }
    const auto frames = pair_frames(sources);
    prepare_out_dir(cfg.out_dir);

    const std::vector<std::string> names = image_metric_names(cfg, sel);
    const auto tau = static_cast<float>(cfg.tau);
    const auto cap = [&](double psnr) { return std::min(psnr, cfg.psnr_cap); };

    auto outcomes = run_frames(frames.size(), cfg.jobs, [&](std::size_t i) {
      const FrameSet& frame = frames[i];
      const ImageTensor gt = io::load_image(frame.files[0]);
      const ImageTensor gen = io::load_image(frame.files[1]);
      nlohmann::ordered_json values = nlohmann::ordered_json::object();
      nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
      if (sel.l1) values["l1"] = metrics::l1(gt, gen);
      if (sel.psnr) values["psnr"] = cap(metrics::psnr(gt, gen));
      if (sel.ssim) values["ssim"] = metrics::ssim(gt, gen);

      for (MaskMode mode : modes) {
        AlphaMask mask;
        if (mode == MaskMode::kSalient) {
          mask = io::load_mask(frame.files[salient_slot]);
        } else {
          const AlphaMask occlusion = io::load_mask(frame.files[occlusion_slot]);
          const AlphaMask background = background_slot ? io::load_mask(frame.files[background_slot])
                                                       : AlphaMask::filled(occlusion.height(), occlusion.width(), 0.0f);
          BinaryMask topk = derive_prioritycut_mask(occlusion, background, *topk_k, tau);
          if (mode == MaskMode::kNegTopK) topk = invert_mask(topk);
          mask = topk.as_alpha();
        }
        if (cfg.hard_masks) mask = metrics::harden(mask);
        if (mask.height() != gt.height() || mask.width() != gt.width()) {
          throw ShapeError(std::string(to_string(mode)) + " mask is " + shape_string(mask.height(), mask.width()) +
                           ", frame is " + shape_string(gt.height(), gt.width()));
        }

        const std::string suffix = "[" + std::string(to_string(mode)) + "]";
        const bool empty_mask = sum_of(mask) <= 0.0;
        if (sel.m_psnr) {
          if (empty_mask) {
            skipped.push_back("m-psnr" + suffix);
          } else {
            values["m-psnr" + suffix] = cap(metrics::masked_psnr(gt, gen, mask));
          }
        }
        if (sel.m_ssim) {
          try {
            if (empty_mask) throw ArgumentError("empty mask");
            values["m-ssim" + suffix] = metrics::masked_ssim(gt, gen, mask);
          } catch (const ArgumentError&) {
            skipped.push_back("m-ssim" + suffix);
          }
        }
      }

      nlohmann::ordered_json entry;
      entry["frame"] = frame.stem;
      entry["values"] = std::move(values);
      entry["skipped"] = std::move(skipped);
      return entry;
    });

    // Sequence metrics over the detector outputs.
    std::vector<SequenceMetric> sequence_metrics;
    if (sel.akd || sel.mkr) {
      const KeypointSequence gt = io::load_keypoints(cfg.gt_keypoints);
      const KeypointSequence gen = io::load_keypoints(cfg.gen_keypoints);
      if (gt.frame_count() != gen.frame_count() || gt.keypoints_per_frame() != gen.keypoints_per_frame()) {
        throw ConfigError("keypoint files disagree: " + std::to_string(gt.frame_count()) + "x" +
                          std::to_string(gt.keypoints_per_frame()) + " vs " + std::to_string(gen.frame_count()) +
                          "x" + std::to_string(gen.keypoints_per_frame()));
      }
      SequenceMetric akd{"akd", {}}, mkr{"mkr", {}};
      for (std::size_t f = 0; f < gt.frame_count(); ++f) {
        akd.per_frame.push_back(metrics::akd_frame(gt[f], gen[f]));
        mkr.per_frame.push_back(metrics::mkr_frame(gt[f], gen[f]));
      }
      if (sel.akd) sequence_metrics.push_back(std::move(akd));
      if (sel.mkr) sequence_metrics.push_back(std::move(mkr));
    }
    if (sel.aed) {
      const EmbeddingSequence gt = io::load_embeddings(cfg.gt_embeddings);
      const EmbeddingSequence gen = io::load_embeddings(cfg.gen_embeddings);
      if (gt.frame_count() != gen.frame_count() || gt.dimension() != gen.dimension()) {
        throw ConfigError("embedding files disagree in frame count or dimension");
      }
      SequenceMetric aed{"aed", {}};
      for (std::size_t f = 0; f < gt.frame_count(); ++f) aed.per_frame.push_back(metrics::aed_frame(gt[f], gen[f]));
      sequence_metrics.push_back(std::move(aed));
    }

    nlohmann::ordered_json per_frame = run_header("evaluate", cfg);
    bool failed = collect_outcomes(frames, outcomes, per_frame, log);

    MetricReport report;
    report.frames = frames.size();
    const auto add_record = [&](const std::string& name, const std::vector<double>& values, std::size_t skipped) {
      if (skipped > 0) log << "warning: " << name << " skipped on " << skipped << " frame(s)\n";
      if (values.empty()) {
        log << "error: " << name << " has no valid frames\n";
        failed = true;
        return;
      }
      report.metrics.push_back({name, metrics::aggregate(values), skipped});
    };

    for (const std::string& name : names) {
      std::vector<double> values;
      std::size_t skipped = 0;
      for (const auto& entry : per_frame["frames"]) {
        const auto& v = entry["values"];
        if (v.contains(name)) {
          values.push_back(v[name].get<double>());
        } else {
          ++skipped;
        }
      }
      add_record(name, values, skipped);
    }

    nlohmann::ordered_json sequences = nlohmann::ordered_json::object();
    for (const SequenceMetric& m : sequence_metrics) {
      std::vector<double> values;
      std::size_t skipped = 0;
      nlohmann::ordered_json column = nlohmann::ordered_json::array();
      for (const auto& v : m.per_frame) {
        if (v) {
          values.push_back(*v);
          column.push_back(*v);
        } else {
          ++skipped;
          column.push_back(nullptr);
        }
      }
      sequences[m.name] = std::move(column);
      add_record(m.name, values, skipped);
    }
    per_frame["sequences"] = std::move(sequences);

    const std::string json = to_json(report);
    const std::string table = to_table(report);
    write_text(cfg.out_dir / "report.json", json);
    write_text(cfg.out_dir / "report.txt", table);
    write_text(cfg.out_dir / "per_frame.json", per_frame.dump(2) + "\n");
    out << (cfg.format == OutputFormat::kJson ? json : table);
    return failed ? kExitFrameFailure : kExitOk;
  });
}

}  // namespace prioritycut::app
