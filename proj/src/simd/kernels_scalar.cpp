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

// Reference kernels. Complex products are spelled out on real and imaginary
// parts so the compiler does not route them through __muldc3.

#include "qbat/simd/kernels.hpp"

namespace qbat::simd {
namespace {

void matvec_scalar(const cplx* a, std::size_t dim, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < dim; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double xr = x[j].real();
    const double xi = x[j].imag();
    const cplx* col = a + j * dim;
    for (std::size_t i = 0; i < dim; ++i) {
      const double ar = col[i].real();
      const double ai = col[i].imag();
      y[i] = cplx(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ai * xr + ar * xi));
    }
  }
}

cplx dot_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double yr = y[i].real();
    const double yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void adjoint_matvec_scalar(const cplx* a, std::size_t dim, const cplx* x, cplx* y) {
  for (std::size_t j = 0; j < dim; ++j) y[j] = dot_scalar(a + j * dim, x, dim);
}

void hadamard_scalar(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real();
    const double ai = a[i].imag();
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = cplx(ar * xr - ai * xi, ai * xr + ar * xi);
  }
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", matvec_scalar, adjoint_matvec_scalar, dot_scalar,
                                 hadamard_scalar, norm_sq_scalar};
  return table;
}

}  // namespace qbat::simd
