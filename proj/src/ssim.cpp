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
#include <string>

#include "prioritycut/error.hpp"
#include "prioritycut/metrics.hpp"

namespace prioritycut::metrics {

namespace {

std::vector<double> gaussian_kernel(std::size_t size, double sigma) {
  std::vector<double> k(size);
  const double centre = static_cast<double>(size / 2);
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double d = static_cast<double>(i) - centre;
    k[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    total += k[i];
  }
  for (double& v : k) v /= total;
  return k;
}

// Separable 'valid' Gaussian filter of an H x W plane.
class ValidFilter {
 public:
  ValidFilter(std::size_t height, std::size_t width, std::vector<double> kernel)
      : height_(height), width_(width), kernel_(std::move(kernel)),
        out_h_(height - kernel_.size() + 1), out_w_(width - kernel_.size() + 1),
        rows_(height * out_w_) {}

  std::size_t out_height() const { return out_h_; }
  std::size_t out_width() const { return out_w_; }

  void apply(const std::vector<double>& in, std::vector<double>& out) {
    const std::size_t n = kernel_.size();
    for (std::size_t y = 0; y < height_; ++y) {
      const double* src = in.data() + y * width_;
      double* dst = rows_.data() + y * out_w_;
      for (std::size_t x = 0; x < out_w_; ++x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += kernel_[i] * src[x + i];
        dst[x] = acc;
      }
    }
    out.assign(out_h_ * out_w_, 0.0);
    for (std::size_t y = 0; y < out_h_; ++y) {
      double* dst = out.data() + y * out_w_;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = kernel_[i];
        const double* src = rows_.data() + (y + i) * out_w_;
        for (std::size_t x = 0; x < out_w_; ++x) dst[x] += w * src[x];
      }
    }
  }

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<double> kernel_;
  std::size_t out_h_;
  std::size_t out_w_;
  std::vector<double> rows_;
};

}  // namespace

void SsimParams::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw ArgumentError("SSIM window must be odd and >= 3, got " + std::to_string(window));
  }
  if (!(sigma > 0.0)) throw ArgumentError("SSIM sigma must be positive");
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw ArgumentError("SSIM k1 and k2 must be positive");
  if (!(dynamic_range > 0.0)) throw ArgumentError("SSIM dynamic range must be positive");
}

SsimMap ssim_map(const ImageTensor& a, const ImageTensor& b, const SsimParams& params) {
  params.validate();
  if (a.height() != b.height() || a.width() != b.width() || a.channels() != b.channels()) {
    throw ShapeError("ssim: " + shape_string(a.height(), a.width(), a.channels()) + " vs " +
                     shape_string(b.height(), b.width(), b.channels()));
  }
  if (a.height() < params.window || a.width() < params.window) {
    throw ArgumentError("ssim: image " + shape_string(a.height(), a.width()) + " is smaller than the " +
                        std::to_string(params.window) + "px window");
  }

  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);
  const std::size_t h = a.height();
  const std::size_t w = a.width();
  const std::size_t channels = a.channels();

  ValidFilter filter(h, w, gaussian_kernel(params.window, params.sigma));
  SsimMap map{filter.out_height(), filter.out_width(), params.window / 2, {}};
  map.values.assign(map.height * map.width, 0.0);

  std::vector<double> pa(h * w), pb(h * w), paa(h * w), pbb(h * w), pab(h * w);
  std::vector<double> mu_a, mu_b, e_aa, e_bb, e_ab;
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t p = 0; p < h * w; ++p) {
      const double va = a[p * channels + c];
      const double vb = b[p * channels + c];
      pa[p] = va;
      pb[p] = vb;
      paa[p] = va * va;
      pbb[p] = vb * vb;
      pab[p] = va * vb;
    }
    filter.apply(pa, mu_a);
    filter.apply(pb, mu_b);
    filter.apply(paa, e_aa);
    filter.apply(pbb, e_bb);
    filter.apply(pab, e_ab);
    for (std::size_t i = 0; i < map.values.size(); ++i) {
      const double ma = mu_a[i];
      const double mb = mu_b[i];
      const double var_a = e_aa[i] - ma * ma;
      const double var_b = e_bb[i] - mb * mb;
      const double cov = e_ab[i] - ma * mb;
      const double num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
      const double den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
      map.values[i] += num / den;
    }
  }
  for (double& v : map.values) v /= static_cast<double>(channels);
  return map;
}

double ssim(const ImageTensor& a, const ImageTensor& b, const SsimParams& params) {
  const SsimMap map = ssim_map(a, b, params);
  double sum = 0.0;
  for (double v : map.values) sum += v;
  return sum / static_cast<double>(map.values.size());
}

double masked_ssim(const ImageTensor& a, const ImageTensor& b, const AlphaMask& mask, const SsimParams& params) {
  if (mask.height() != a.height() || mask.width() != a.width()) {
    throw ShapeError("masked_ssim: image " + shape_string(a.height(), a.width()) + " vs mask " +
                     shape_string(mask.height(), mask.width()));
  }
  const SsimMap map = ssim_map(a, b, params);
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < map.height; ++r) {
    for (std::size_t c = 0; c < map.width; ++c) {
      const double m = mask.at(r + map.offset, c + map.offset);
      weighted += m * map.values[r * map.width + c];
      total += m;
    }
  }
  if (total <= 0.0) throw ArgumentError("masked_ssim: mask is zero at every window centre");
  return weighted / total;
}

}  // namespace prioritycut::metrics
