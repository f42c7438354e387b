// Copyright 2026 The z2meson Authors
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

#include "z2meson/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace z2m::kernels {
namespace {

cplx dotc_ref(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm2_ref(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void axpy_ref(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_ref(cplx a, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void hadamard_ref(const cplx* d, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= d[i];
}

void csr_matvec_ref(std::size_t rows, const std::int64_t* rowptr,
                    const std::int32_t* col, const cplx* val, const cplx* x,
                    cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double re = 0.0, im = 0.0;
    for (std::int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) {
      const cplx v = val[k];
      const cplx u = x[col[k]];
      re += v.real() * u.real() - v.imag() * u.imag();
      im += v.real() * u.imag() + v.imag() * u.real();
    }
    y[r] = {re, im};
  }
}

const Table kScalar{dotc_ref, norm2_ref, axpy_ref, scale_ref, hadamard_ref,
                    csr_matvec_ref};

std::atomic<const Table*> g_active{nullptr};

const Table* pick_default() {
  const char* env = std::getenv("Z2M_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalar;
  if (avx2_available()) return &avx2_table();
  return &kScalar;
}

}  // namespace

const Table& scalar_table() { return kScalar; }

bool avx2_available() {
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
}

const Table& active() {
  const Table* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = pick_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

Backend active_backend() {
  return &active() == &kScalar ? Backend::Scalar : Backend::Avx2;
}

void set_backend(Backend b) {
  g_active.store(b == Backend::Scalar ? &kScalar : &avx2_table(),
                 std::memory_order_release);
}

std::string_view backend_name(Backend b) {
  return b == Backend::Scalar ? "scalar" : "avx2";
}

}  // namespace z2m::kernels
