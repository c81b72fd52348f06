// Copyright 2026 The qbat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2/FMA kernels. This unit is the only one compiled with -mavx2 -mfma;
// nothing here may be called unless dispatch has confirmed CPU support.
//
// One __m256d holds two complex doubles laid out [re0 im0 re1 im1]
// (std::complex<double> is array-compatible with double[2]).

#include "qbat/simd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define QBAT_HAVE_AVX2_UNIT 1
#else
#define QBAT_HAVE_AVX2_UNIT 0
#endif

namespace qbat::simd {

#if QBAT_HAVE_AVX2_UNIT
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
// [re0 im0 re1 im1] -> [im0 re0 im1 re1]
inline __m256d swap_parts(__m256d v) { return _mm256_permute_pd(v, 0x5); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Accumulates a_j x_j into (re_acc, swap_acc); the complex product is
// recovered at the end with one addsub.
void matvec_avx2(const cplx* a, std::size_t dim, const cplx* x, cplx* y) {
  std::size_t i = 0;
  for (; i + 4 <= dim; i += 4) {
    __m256d p0 = _mm256_setzero_pd(), q0 = _mm256_setzero_pd();
    __m256d p1 = _mm256_setzero_pd(), q1 = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      const __m256d xr = _mm256_set1_pd(x[j].real());
      const __m256d xi = _mm256_set1_pd(x[j].imag());
      const cplx* col = a + j * dim + i;
      const __m256d c0 = load2(col);
      const __m256d c1 = load2(col + 2);
      p0 = _mm256_fmadd_pd(c0, xr, p0);
      q0 = _mm256_fmadd_pd(swap_parts(c0), xi, q0);
      p1 = _mm256_fmadd_pd(c1, xr, p1);
      q1 = _mm256_fmadd_pd(swap_parts(c1), xi, q1);
    }
    store2(y + i, _mm256_addsub_pd(p0, q0));
    store2(y + i + 2, _mm256_addsub_pd(p1, q1));
  }
  for (; i + 2 <= dim; i += 2) {
    __m256d p = _mm256_setzero_pd(), q = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      const __m256d c = load2(a + j * dim + i);
      p = _mm256_fmadd_pd(c, _mm256_set1_pd(x[j].real()), p);
      q = _mm256_fmadd_pd(swap_parts(c), _mm256_set1_pd(x[j].imag()), q);
    }
    store2(y + i, _mm256_addsub_pd(p, q));
  }
  for (; i < dim; ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const cplx c = a[j * dim + i];
      re += c.real() * x[j].real() - c.imag() * x[j].imag();
      im += c.imag() * x[j].real() + c.real() * x[j].imag();
    }
    y[i] = {re, im};
  }
}

cplx dot_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d direct = _mm256_setzero_pd();   // [xr*yr, xi*yi, ...]
  __m256d crossed = _mm256_setzero_pd();  // [xi*yr, xr*yi, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    direct = _mm256_fmadd_pd(xv, yv, direct);
    crossed = _mm256_fmadd_pd(swap_parts(xv), yv, crossed);
  }
  // crossed odd lanes minus even lanes gives the imaginary part.
  const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(direct);
  double im = hsum(_mm256_mul_pd(crossed, sign));
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void adjoint_matvec_avx2(const cplx* a, std::size_t dim, const cplx* x, cplx* y) {
  for (std::size_t j = 0; j < dim; ++j) y[j] = dot_avx2(a + j * dim, x, dim);
}

void hadamard_avx2(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = load2(a + i);
    const __m256d xv = load2(x + i);
    const __m256d x_re = _mm256_movedup_pd(xv);
    const __m256d x_im = _mm256_permute_pd(xv, 0xF);
    store2(y + i, _mm256_fmaddsub_pd(av, x_re, _mm256_mul_pd(swap_parts(av), x_im)));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {ar * xr - ai * xi, ai * xr + ar * xi};
  }
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

const KernelTable kAvx2Table{"avx2", matvec_avx2, adjoint_matvec_avx2, dot_avx2, hadamard_avx2,
                             norm_sq_avx2};

}  // namespace

const KernelTable* avx2_table_unchecked() { return &kAvx2Table; }

#else

const KernelTable* avx2_table_unchecked() { return nullptr; }

#endif

}  // namespace qbat::simd
