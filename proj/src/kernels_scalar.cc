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

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "structmia/kernels.h"

namespace structmia::kernels {
namespace {

double ScaledSqDistanceRef(const double* x, const double* y, double scale,
                           std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - scale * y[i];
    acc += d * d;
  }
  return acc;
}

double DotRef(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double L1DistanceRef(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - y[i]);
  return acc;
}

void AxpyRef(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void AxpbyRef(double a, const double* x, double b, const double* y,
              double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

float DotFRef(const float* x, const float* y, std::size_t n) {
  float acc = 0.0f;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void AxpyFRef(float a, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void GemmFRef(std::size_t m, std::size_t n, std::size_t k, const float* a,
              std::size_t lda, const float* b, std::size_t ldb, float* c,
              std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const float aip = a[i * lda + p];
      for (std::size_t j = 0; j < n; ++j) c[i * ldc + j] += aip * b[p * ldb + j];
    }
  }
}

const KernelTable kScalarTable = {
    "scalar", &ScaledSqDistanceRef, &DotRef,   &L1DistanceRef, &AxpyRef,
    &AxpbyRef, &DotFRef,            &AxpyFRef, &GemmFRef,
};

const KernelTable& Select() {
  const char* forced = std::getenv("STRUCTMIA_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return kScalarTable;
  }
  if (const KernelTable* avx2 = Avx2()) return *avx2;
  return kScalarTable;
}

}  // namespace

const KernelTable& Scalar() { return kScalarTable; }

const KernelTable& Active() {
  static const KernelTable& table = Select();
  return table;
}

}  // namespace structmia::kernels
