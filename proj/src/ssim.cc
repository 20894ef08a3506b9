// Copyright 2026 The StructMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "structmia/ssim.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "structmia/error.h"
#include "structmia/kernels.h"

namespace structmia {
namespace {

double Clamp01(double v) {
  if (!(v > 0.0)) return 0.0;  // also maps NaN to 0
  return v < 1.0 ? v : 1.0;
}

// Valid-mode separable filter of one H x W plane with `taps` along both axes.
// Output is (H - k + 1) x (W - k + 1).
std::vector<double> Filter(const std::vector<double>& plane, int h, int w,
                           const std::vector<double>& taps) {
  const auto& kern = kernels::Active();
  const int k = static_cast<int>(taps.size());
  const int oh = h - k + 1;
  const int ow = w - k + 1;
  std::vector<double> rows(static_cast<std::size_t>(h) * ow, 0.0);
  for (int y = 0; y < h; ++y) {
    double* out = &rows[static_cast<std::size_t>(y) * ow];
    const double* in = &plane[static_cast<std::size_t>(y) * w];
    for (int j = 0; j < k; ++j) kern.axpy(taps[j], in + j, out, ow);
  }
  std::vector<double> result(static_cast<std::size_t>(oh) * ow, 0.0);
  for (int y = 0; y < oh; ++y) {
    double* out = &result[static_cast<std::size_t>(y) * ow];
    for (int j = 0; j < k; ++j) {
      kern.axpy(taps[j], &rows[static_cast<std::size_t>(y + j) * ow], out, ow);
    }
  }
  return result;
}

}  // namespace

void SsimParams::Validate() const {
  if (window < 1 || window % 2 == 0) {
    throw ParameterError("SSIM window must be a positive odd size, got " +
                         std::to_string(window));
  }
  if (!(sigma > 0.0) || !(dynamic_range > 0.0)) {
    throw ParameterError("SSIM sigma and dynamic range must be positive");
  }
  if (!(k1 >= 0.0) || !(k2 >= 0.0)) {
    throw ParameterError("SSIM constants k1, k2 must be non-negative");
  }
}

std::vector<double> GaussianTaps(const SsimParams& params) {
  params.Validate();
  const int half = params.window / 2;
  std::vector<double> taps(params.window);
  double total = 0.0;
  for (int i = 0; i < params.window; ++i) {
    const double d = i - half;
    taps[i] = std::exp(-d * d / (2.0 * params.sigma * params.sigma));
    total += taps[i];
  }
  for (double& v : taps) v /= total;
  return taps;
}

double Ssim(const Raster& x, const Raster& y, const SsimParams& params) {
  if (x.shape() != y.shape()) {
    throw ParameterError("SSIM inputs differ in shape: " +
                         ToString(x.shape()) + " vs " + ToString(y.shape()));
  }
  const Shape s = x.shape();
  if (s.channels < 1 || s.height < params.window || s.width < params.window) {
    throw ParameterError("SSIM needs images of at least " +
                         std::to_string(params.window) + "x" +
                         std::to_string(params.window) + ", got " +
                         ToString(s));
  }
  const std::vector<double> taps = GaussianTaps(params);
  const double c1 = (params.k1 * params.dynamic_range) *
                    (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) *
                    (params.k2 * params.dynamic_range);
  const std::size_t plane_size = static_cast<std::size_t>(s.height) * s.width;

  std::vector<double> px(plane_size), py(plane_size), pxx(plane_size),
      pyy(plane_size), pxy(plane_size);
  double total = 0.0;
  std::size_t count = 0;
  for (int c = 0; c < s.channels; ++c) {
    for (std::size_t i = 0; i < plane_size; ++i) {
      const double a = Clamp01(x.data()[i * s.channels + c]);
      const double b = Clamp01(y.data()[i * s.channels + c]);
      px[i] = a;
      py[i] = b;
      pxx[i] = a * a;
      pyy[i] = b * b;
      pxy[i] = a * b;
    }
    const auto mx = Filter(px, s.height, s.width, taps);
    const auto my = Filter(py, s.height, s.width, taps);
    const auto exx = Filter(pxx, s.height, s.width, taps);
    const auto eyy = Filter(pyy, s.height, s.width, taps);
    const auto exy = Filter(pxy, s.height, s.width, taps);
    for (std::size_t i = 0; i < mx.size(); ++i) {
      // Each expression is written so that swapping x and y swaps operands of
      // commutative operations only, which keeps the result symmetric.
      const double mxy = mx[i] * my[i];
      const double vx = exx[i] - mx[i] * mx[i];
      const double vy = eyy[i] - my[i] * my[i];
      const double cov = exy[i] - mxy;
      const double num = (2.0 * mxy + c1) * (2.0 * cov + c2);
      const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2);
      total += num / den;
    }
    count += mx.size();
  }
  return total / static_cast<double>(count);
}

}  // namespace structmia
