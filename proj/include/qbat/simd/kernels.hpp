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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qbat::simd {

using cplx = std::complex<double>;

/// Dense complex kernels used on the state-vector hot path.
///
/// Matrices are square, column-major (Eigen's default storage), `dim` rows.
/// Every variant must agree with the scalar reference to within a few ulps
/// per accumulated term; the equivalence tests pin this at 1e-13 relative.
struct KernelTable {
  std::string_view name;
  /// y = A x
  void (*matvec)(const cplx* a, std::size_t dim, const cplx* x, cplx* y);
  /// y = A^dagger x
  void (*adjoint_matvec)(const cplx* a, std::size_t dim, const cplx* x, cplx* y);
  /// sum_i conj(x_i) y_i
  cplx (*dot)(const cplx* x, const cplx* y, std::size_t n);
  /// y_i = a_i x_i (y may alias x)
  void (*hadamard)(const cplx* a, const cplx* x, cplx* y, std::size_t n);
  /// sum_i |x_i|^2
  double (*norm_sq)(const cplx* x, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Null when the binary was built without the AVX2 unit or the CPU lacks
/// AVX2+FMA.
const KernelTable* avx2_kernels();

/// The table used by the library. Chosen once, on first call: AVX2 when
/// available, unless the environment sets QBAT_SIMD=scalar.
const KernelTable& active_kernels();

// Span front ends over the active table.

void matvec(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y);
void adjoint_matvec(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y);
cplx dot(std::span<const cplx> x, std::span<const cplx> y);
void hadamard(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y);
double norm_sq(std::span<const cplx> x);

}  // namespace qbat::simd
