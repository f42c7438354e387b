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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "z2meson/types.hpp"

// Dense and sparse complex kernels. Every routine exists as a portable
// scalar reference and an AVX2/FMA variant; the active table is picked at
// first use from the CPU feature bits and can be overridden.
namespace z2m::kernels {

enum class Backend { Scalar, Avx2 };

struct Table {
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  double (*norm2)(const cplx* x, std::size_t n);
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  void (*scale)(cplx a, cplx* x, std::size_t n);
  void (*hadamard)(const cplx* d, cplx* x, std::size_t n);
  void (*csr_matvec)(std::size_t rows, const std::int64_t* rowptr,
                     const std::int32_t* col, const cplx* val, const cplx* x,
                     cplx* y);
};

const Table& scalar_table();
// Throws std::runtime_error when the CPU lacks AVX2/FMA.
const Table& avx2_table();
bool avx2_available();

const Table& active();
Backend active_backend();
void set_backend(Backend b);
std::string_view backend_name(Backend b);

// Convenience wrappers over the active table.
inline cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  return active().dotc(x, y, n);
}
inline double norm2(const cplx* x, std::size_t n) {
  return active().norm2(x, n);
}
inline void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline void scale(cplx a, cplx* x, std::size_t n) { active().scale(a, x, n); }
inline void hadamard(const cplx* d, cplx* x, std::size_t n) {
  active().hadamard(d, x, n);
}

inline cplx dotc(const VecC& x, const VecC& y) {
  return dotc(x.data(), y.data(), static_cast<std::size_t>(x.size()));
}
inline double norm2(const VecC& x) {
  return norm2(x.data(), static_cast<std::size_t>(x.size()));
}
inline void axpy(cplx a, const VecC& x, VecC& y) {
  axpy(a, x.data(), y.data(), static_cast<std::size_t>(x.size()));
}

}  // namespace z2m::kernels
