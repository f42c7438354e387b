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

// AVX2/FMA variants. Complex numbers are stored interleaved (re, im), so one
// 256-bit register holds two of them. Only intrinsics and plain double
// arithmetic appear inside the target-attributed functions.

#include <immintrin.h>

#include <stdexcept>

#include "z2meson/kernels.hpp"

#define Z2M_AVX2 __attribute__((target("avx2,fma")))

namespace z2m::kernels {
namespace {

Z2M_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

Z2M_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

Z2M_AVX2 cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);
    const __m256d b = _mm256_loadu_pd(yp + 2 * i);
    re = _mm256_fmadd_pd(a, b, re);
    im = _mm256_fmadd_pd(a, _mm256_permute_pd(b, 0x5), im);
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, im);
  double sr = hsum(re);
  double si = (t[0] - t[1]) + (t[2] - t[3]);
  for (; i < n; ++i) {
    sr += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    si += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {sr, si};
}

Z2M_AVX2 double norm2_avx2(const cplx* x, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(a, a, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

Z2M_AVX2 void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xp + 2 * i);
    const __m256d p =
        _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, _mm256_permute_pd(v, 0x5)));
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), p));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (a.real() * xr - a.imag() * xi),
            y[i].imag() + (a.real() * xi + a.imag() * xr)};
  }
}

Z2M_AVX2 void scale_avx2(cplx a, cplx* x, std::size_t n) {
  double* xp = reinterpret_cast<double*>(x);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xp + 2 * i);
    _mm256_storeu_pd(xp + 2 * i,
                     _mm256_fmaddsub_pd(
                         ar, v, _mm256_mul_pd(ai, _mm256_permute_pd(v, 0x5))));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = {a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr};
  }
}

Z2M_AVX2 void hadamard_avx2(const cplx* d, cplx* x, std::size_t n) {
  const double* dp = reinterpret_cast<const double*>(d);
  double* xp = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(xp + 2 * i, cmul(_mm256_loadu_pd(dp + 2 * i),
                                      _mm256_loadu_pd(xp + 2 * i)));
  }
  for (; i < n; ++i) {
    const double dr = d[i].real(), di = d[i].imag();
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = {dr * xr - di * xi, dr * xi + di * xr};
  }
}

Z2M_AVX2 void csr_matvec_avx2(std::size_t rows, const std::int64_t* rowptr,
                              const std::int32_t* col, const cplx* val,
                              const cplx* x, cplx* y) {
  const double* vp = reinterpret_cast<const double*>(val);
  const double* xp = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    std::int64_t k = rowptr[r];
    const std::int64_t end = rowptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 2 <= end; k += 2) {
      const __m128d x0 = _mm_loadu_pd(xp + 2 * col[k]);
      const __m128d x1 = _mm_loadu_pd(xp + 2 * col[k + 1]);
      const __m256d xv = _mm256_insertf128_pd(_mm256_castpd128_pd256(x0), x1, 1);
      acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(vp + 2 * k), xv));
    }
    const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc),
                                 _mm256_extractf128_pd(acc, 1));
    alignas(16) double t[2];
    _mm_store_pd(t, s);
    double re = t[0], im = t[1];
    for (; k < end; ++k) {
      const double vr = val[k].real(), vi = val[k].imag();
      const double ur = x[col[k]].real(), ui = x[col[k]].imag();
      re += vr * ur - vi * ui;
      im += vr * ui + vi * ur;
    }
    y[r] = {re, im};
  }
}

const Table kAvx2{dotc_avx2, norm2_avx2, axpy_avx2, scale_avx2, hadamard_avx2,
                  csr_matvec_avx2};

}  // namespace

const Table& avx2_table() {
  if (!avx2_available()) {
    throw std::runtime_error("AVX2/FMA kernels requested on a CPU without them");
  }
  return kAvx2;
}

}  // namespace z2m::kernels
