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

// AVX2+FMA variants. Functions carry target attributes so the rest of the
// library can be compiled for baseline x86-64 and pick these at runtime.

#include "structmia/kernels.h"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define STRUCTMIA_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace structmia::kernels {

#ifdef STRUCTMIA_HAVE_AVX2_KERNELS
namespace {

#define STRUCTMIA_AVX2 __attribute__((target("avx2,fma")))

STRUCTMIA_AVX2 inline double HorizontalSum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

STRUCTMIA_AVX2 inline float HorizontalSum(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  __m128 shuf = _mm_movehdup_ps(lo);
  __m128 sums = _mm_add_ps(lo, shuf);
  shuf = _mm_movehl_ps(shuf, sums);
  return _mm_cvtss_f32(_mm_add_ss(sums, shuf));
}

STRUCTMIA_AVX2 double ScaledSqDistanceAvx2(const double* x, const double* y,
                                           double scale, std::size_t n) {
  const __m256d s = _mm256_set1_pd(scale);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d d0 = _mm256_fnmadd_pd(s, _mm256_loadu_pd(y + i),
                                  _mm256_loadu_pd(x + i));
    __m256d d1 = _mm256_fnmadd_pd(s, _mm256_loadu_pd(y + i + 4),
                                  _mm256_loadu_pd(x + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_fnmadd_pd(s, _mm256_loadu_pd(y + i),
                                 _mm256_loadu_pd(x + i));
    acc0 = _mm256_fmadd_pd(d, d, acc0);
  }
  double acc = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = x[i] - scale * y[i];
    acc += d * d;
  }
  return acc;
}

STRUCTMIA_AVX2 double DotAvx2(const double* x, const double* y,
                              std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
  }
  double acc = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

STRUCTMIA_AVX2 double L1DistanceAvx2(const double* x, const double* y,
                                     std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  double total = HorizontalSum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    total += d < 0 ? -d : d;
  }
  return total;
}

STRUCTMIA_AVX2 void AxpyAvx2(double a, const double* x, double* y,
                             std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

STRUCTMIA_AVX2 void AxpbyAvx2(double a, const double* x, double b,
                              const double* y, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), by));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

STRUCTMIA_AVX2 float DotFAvx2(const float* x, const float* y, std::size_t n) {
  __m256 acc0 = _mm256_setzero_ps();
  __m256 acc1 = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i),
                           acc0);
    acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i + 8),
                           _mm256_loadu_ps(y + i + 8), acc1);
  }
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i),
                           acc0);
  }
  float acc = HorizontalSum(_mm256_add_ps(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

STRUCTMIA_AVX2 void AxpyFAvx2(float a, const float* x, float* y,
                              std::size_t n) {
  const __m256 va = _mm256_set1_ps(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(y + i, _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i),
                                            _mm256_loadu_ps(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

// 4 x 16 register tile: eight accumulators, A entries broadcast, B rows
// streamed along k.
STRUCTMIA_AVX2 void GemmTile4x16(std::size_t k, const float* a,
                                 std::size_t lda, const float* b,
                                 std::size_t ldb, float* c, std::size_t ldc) {
  __m256 c00 = _mm256_loadu_ps(c), c01 = _mm256_loadu_ps(c + 8);
  __m256 c10 = _mm256_loadu_ps(c + ldc), c11 = _mm256_loadu_ps(c + ldc + 8);
  __m256 c20 = _mm256_loadu_ps(c + 2 * ldc);
  __m256 c21 = _mm256_loadu_ps(c + 2 * ldc + 8);
  __m256 c30 = _mm256_loadu_ps(c + 3 * ldc);
  __m256 c31 = _mm256_loadu_ps(c + 3 * ldc + 8);
  for (std::size_t p = 0; p < k; ++p) {
    const __m256 b0 = _mm256_loadu_ps(b + p * ldb);
    const __m256 b1 = _mm256_loadu_ps(b + p * ldb + 8);
    __m256 av = _mm256_broadcast_ss(a + p);
    c00 = _mm256_fmadd_ps(av, b0, c00);
    c01 = _mm256_fmadd_ps(av, b1, c01);
    av = _mm256_broadcast_ss(a + lda + p);
    c10 = _mm256_fmadd_ps(av, b0, c10);
    c11 = _mm256_fmadd_ps(av, b1, c11);
    av = _mm256_broadcast_ss(a + 2 * lda + p);
    c20 = _mm256_fmadd_ps(av, b0, c20);
    c21 = _mm256_fmadd_ps(av, b1, c21);
    av = _mm256_broadcast_ss(a + 3 * lda + p);
    c30 = _mm256_fmadd_ps(av, b0, c30);
    c31 = _mm256_fmadd_ps(av, b1, c31);
  }
  _mm256_storeu_ps(c, c00);
  _mm256_storeu_ps(c + 8, c01);
  _mm256_storeu_ps(c + ldc, c10);
  _mm256_storeu_ps(c + ldc + 8, c11);
  _mm256_storeu_ps(c + 2 * ldc, c20);
  _mm256_storeu_ps(c + 2 * ldc + 8, c21);
  _mm256_storeu_ps(c + 3 * ldc, c30);
  _mm256_storeu_ps(c + 3 * ldc + 8, c31);
}

STRUCTMIA_AVX2 void GemmFAvx2(std::size_t m, std::size_t n, std::size_t k,
                              const float* a, std::size_t lda, const float* b,
                              std::size_t ldb, float* c, std::size_t ldc) {
  const std::size_t m4 = m - m % 4;
  const std::size_t n16 = n - n % 16;
  for (std::size_t i = 0; i < m4; i += 4) {
    for (std::size_t j = 0; j < n16; j += 16) {
      GemmTile4x16(k, a + i * lda, lda, b + j, ldb, c + i * ldc + j, ldc);
    }
  }
  // Leftover rows and columns: row-wise axpy updates.
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j0 = i < m4 ? n16 : 0;
    if (j0 == n) continue;
    for (std::size_t p = 0; p < k; ++p) {
      AxpyFAvx2(a[i * lda + p], b + p * ldb + j0, c + i * ldc + j0, n - j0);
    }
  }
}

#undef STRUCTMIA_AVX2

const KernelTable kAvx2Table = {
    "avx2",     &ScaledSqDistanceAvx2, &DotAvx2,   &L1DistanceAvx2, &AxpyAvx2,
    &AxpbyAvx2, &DotFAvx2,             &AxpyFAvx2, &GemmFAvx2,
};

}  // namespace

const KernelTable* Avx2() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2Table : nullptr;
}

#else

const KernelTable* Avx2() { return nullptr; }

#endif  // STRUCTMIA_HAVE_AVX2_KERNELS

}  // namespace structmia::kernels
