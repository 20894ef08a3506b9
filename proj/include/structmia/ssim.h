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

#ifndef STRUCTMIA_SSIM_H_
#define STRUCTMIA_SSIM_H_

#include <vector>

#include "structmia/image.h"

namespace structmia {

struct SsimParams {
  int window = 11;  // odd side of the square Gaussian window
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;

  // Throws ParameterError for a non-positive window, sigma or range, an even
  // window, or negative constants.
  void Validate() const;
};

// Normalized 1-D Gaussian taps; the 2-D window is their outer product.
std::vector<double> GaussianTaps(const SsimParams& params);

// Mean SSIM over all valid window positions (stride 1, no padding) and over
// channels. Inputs are clamped into [0, 1] first, so noisy rasters may be
// passed directly. Symmetric in its arguments bit for bit.
//
// Throws ParameterError on a shape mismatch or when a side is smaller than
// the window.
double Ssim(const Raster& x, const Raster& y,
            const SsimParams& params = SsimParams());

inline double Ssim(const Image& x, const Image& y,
                   const SsimParams& params = SsimParams()) {
  return Ssim(x.raster(), y.raster(), params);
}

}  // namespace structmia

#endif  // STRUCTMIA_SSIM_H_
