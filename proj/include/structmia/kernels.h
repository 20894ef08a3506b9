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

#ifndef STRUCTMIA_KERNELS_H_
#define STRUCTMIA_KERNELS_H_

#include <cstddef>
#include <string_view>

namespace structmia::kernels {

// Table of the arithmetic inner loops used by the denoisers, DDIM steps and
// SSIM filtering. Every entry has a scalar reference implementation; SIMD
// variants must agree with it up to floating-point reassociation.
struct KernelTable {
  std::string_view name;

  // sum_i (x[i] - scale * y[i])^2
  double (*scaled_sq_distance)(const double* x, const double* y, double scale,
                               std::size_t n);
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i |x[i] - y[i]|
  double (*l1_distance)(const double* x, const double* y, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[i] = a * x[i] + b * y[i]; out may alias x or y.
  void (*axpby)(double a, const double* x, double b, const double* y,
                double* out, std::size_t n);

  // Single-precision variants for the trainable network.
  float (*dot_f)(const float* x, const float* y, std::size_t n);
  void (*axpy_f)(float a, const float* x, float* y, std::size_t n);
  // C += A * B for row-major A (m x k), B (k x n), C (m x n) with leading
  // dimensions lda, ldb, ldc.
  void (*gemm_f)(std::size_t m, std::size_t n, std::size_t k, const float* a,
                 std::size_t lda, const float* b, std::size_t ldb, float* c,
                 std::size_t ldc);
};

// Portable reference implementations.
const KernelTable& Scalar();

// AVX2+FMA implementations, or nullptr when the build target or the running
// CPU lacks them.
const KernelTable* Avx2();

// The table used by the library. Chosen once per process: AVX2 when the CPU
// supports it, unless the environment variable STRUCTMIA_SIMD=scalar forces
// the reference path.
const KernelTable& Active();

}  // namespace structmia::kernels

#endif  // STRUCTMIA_KERNELS_H_
