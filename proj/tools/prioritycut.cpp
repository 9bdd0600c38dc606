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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "prioritycut/app.hpp"

namespace {

using prioritycut::app::RunConfig;

void add_k_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--k", cfg.k, "Fixed top-k percentage in [0, 100]");
  cmd.add_option("--k-min", cfg.k_min, "Lower bound of the per-frame k draw")->capture_default_str();
  cmd.add_option("--k-max", cfg.k_max, "Upper bound of the per-frame k draw")->capture_default_str();
  cmd.add_option("--tau", cfg.tau, "Background confidence threshold")->capture_default_str();
  cmd.add_option("--seed", cfg.seed, "Run seed")->capture_default_str();
}

void add_run_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--out", cfg.out_dir, "Output directory")->required();
  cmd.add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Occlusion-guided augmentation and evaluation for warp-based image animation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* derive = app.add_subcommand("derive-mask", "Derive top-k occlusion masks from occlusion and background maps");
  derive->add_option("--occlusion", cfg.occlusion_dir, "Directory of occlusion maps")->required();
  derive->add_option("--background", cfg.background_dir, "Directory of alpha background masks")->required();
  derive->add_flag("--keep-intermediates", cfg.keep_intermediates,
                   "Also write the binarized background and foreground occlusion");
  add_k_options(*derive, cfg);
  add_run_options(*derive, cfg);

  std::string method = "prioritycut";
  auto* augment = app.add_subcommand("augment", "Write augmented frames, applied masks, and a manifest");
  augment->add_option("--method", method, "prioritycut, cutmix, cutout, or mixup")
      ->check(CLI::IsMember({"prioritycut", "cutmix", "cutout", "mixup"}))
      ->capture_default_str();
  augment->add_option("--driving", cfg.driving_dir, "Directory of driving (real) frames")->required();
  augment->add_option("--generated", cfg.generated_dir, "Directory of reconstructed frames");
  augment->add_option("--occlusion", cfg.occlusion_dir, "Directory of occlusion maps");
  augment->add_option("--background", cfg.background_dir, "Directory of alpha background masks");
  augment->add_option("--lambda", cfg.lambda, "Mix ratio for mixup/cutmix (drawn per frame when omitted)");
  augment->add_option("--side", cfg.cutout_side, "Cutout square side in pixels (default min(H,W)/2)");
  augment->add_option("--fill", cfg.fill, "Cutout fill value")->capture_default_str();
  augment->add_option("--epoch", cfg.epoch, "Training epoch; enables the probability gate");
  augment->add_option("--warmup-epochs", cfg.warmup_epochs, "Epochs to ramp the probability up")
      ->capture_default_str();
  augment->add_option("--max-probability", cfg.max_probability, "Probability after warm-up")->capture_default_str();
  add_k_options(*augment, cfg);
  add_run_options(*augment, cfg);

  std::vector<std::string> mask_modes;
  std::string format = "table";
  auto* evaluate = app.add_subcommand("evaluate", "Compute image and keypoint metrics with 95% intervals");
  evaluate->add_option("--ground-truth", cfg.ground_truth_dir, "Directory of ground-truth frames")->required();
  evaluate->add_option("--generated", cfg.generated_dir, "Directory of generated frames")->required();
  evaluate->add_option("--mask-mode", mask_modes, "salient, topk, or neg-topk (repeatable)")
      ->check(CLI::IsMember({"salient", "topk", "neg-topk"}));
  evaluate->add_option("--salient-masks", cfg.salient_mask_dir, "Directory of alpha salient masks");
  evaluate->add_option("--occlusion", cfg.occlusion_dir, "Directory of occlusion maps for top-k masks");
  evaluate->add_option("--background", cfg.background_dir, "Directory of alpha background masks for top-k masks");
  evaluate->add_flag("--hard-masks", cfg.hard_masks, "Threshold masks at 0.5 before weighting");
  evaluate->add_option("--metrics", cfg.metrics, "Subset of l1,psnr,ssim,m-psnr,m-ssim,akd,mkr,aed")->delimiter(',');
  evaluate->add_option("--gt-keypoints", cfg.gt_keypoints, "Ground-truth keypoint file");
  evaluate->add_option("--gen-keypoints", cfg.gen_keypoints, "Generated keypoint file");
  evaluate->add_option("--gt-embeddings", cfg.gt_embeddings, "Ground-truth embedding file");
  evaluate->add_option("--gen-embeddings", cfg.gen_embeddings, "Generated embedding file");
  evaluate->add_option("--psnr-cap", cfg.psnr_cap, "Cap applied to PSNR values before aggregation")
      ->capture_default_str();
  evaluate->add_option("--format", format, "Report printed to stdout")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  add_k_options(*evaluate, cfg);
  add_run_options(*evaluate, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return prioritycut::app::kExitConfigError;
  }

  cfg.method = *prioritycut::app::parse_method(method);
  for (const std::string& m : mask_modes) cfg.mask_modes.push_back(*prioritycut::app::parse_mask_mode(m));
  cfg.format = format == "json" ? prioritycut::app::OutputFormat::kJson : prioritycut::app::OutputFormat::kTable;

  if (derive->parsed()) return prioritycut::app::derive_mask(cfg, std::cout, std::cerr);
  if (augment->parsed()) return prioritycut::app::augment(cfg, std::cout, std::cerr);
  return prioritycut::app::evaluate(cfg, std::cout, std::cerr);
}
