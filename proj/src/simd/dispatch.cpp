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

#include <cassert>
#include <cstdlib>
#include <string_view>

#include "qbat/simd/kernels.hpp"

namespace qbat::simd {

const KernelTable* avx2_table_unchecked();  // kernels_avx2.cpp

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_kernels() {
  if (const char* env = std::getenv("QBAT_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
    return scalar_kernels();
  }
  if (const KernelTable* t = avx2_kernels(); t != nullptr) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable* table = cpu_has_avx2_fma() ? avx2_table_unchecked() : nullptr;
  return table;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

void matvec(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y) {
  assert(a.size() == x.size() * x.size() && y.size() == x.size());
  active_kernels().matvec(a.data(), x.size(), x.data(), y.data());
}

void adjoint_matvec(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y) {
  assert(a.size() == x.size() * x.size() && y.size() == x.size());
  active_kernels().adjoint_matvec(a.data(), x.size(), x.data(), y.data());
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
  assert(x.size() == y.size());
  return active_kernels().dot(x.data(), y.data(), x.size());
}

void hadamard(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y) {
  assert(a.size() == x.size() && y.size() == x.size());
  active_kernels().hadamard(a.data(), x.data(), y.data(), x.size());
}

double norm_sq(std::span<const cplx> x) { return active_kernels().norm_sq(x.data(), x.size()); }

}  // namespace qbat::simd
