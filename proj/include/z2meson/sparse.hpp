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

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "z2meson/types.hpp"

namespace z2m {

enum class BasisKind { Full, Sector };

struct Triplet {
  std::int64_t row;
  std::int64_t col;
  cplx value;
};

// Compressed-row complex matrix. Immutable once built.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(BasisKind kind, std::int64_t dim, std::vector<Triplet> entries);

  static SparseOperator identity(BasisKind kind, std::int64_t dim);
  static SparseOperator diagonal(BasisKind kind, const VecC& d);

  BasisKind kind() const { return kind_; }
  std::int64_t dim() const { return dim_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(val_.size()); }

  void apply(const cplx* x, cplx* y) const;
  VecC apply(const VecC& x) const;
  VecC operator*(const VecC& x) const { return apply(x); }

  SparseOperator adjoint() const;
  SparseOperator scaled(cplx a) const;
  // a*this + b*other.
  SparseOperator combined(cplx a, const SparseOperator& other, cplx b) const;
  SparseOperator product(const SparseOperator& right) const;

  MatC to_dense() const;
  std::vector<Triplet> triplets() const;
  // max |A_ij - conj(A_ji)|.
  double hermiticity_defect() const;
  cplx expectation(const VecC& psi) const;

  const std::vector<std::int64_t>& rowptr() const { return rowptr_; }
  const std::vector<std::int32_t>& cols() const { return col_; }
  const std::vector<cplx>& values() const { return val_; }

 private:
  BasisKind kind_ = BasisKind::Sector;
  std::int64_t dim_ = 0;
  std::vector<std::int64_t> rowptr_{0};
  std::vector<std::int32_t> col_;
  std::vector<cplx> val_;
};

// Text dump, one "row col re im" line per nonzero, preceded by a
// "# dim <n> nnz <k>" header.
void write_triplets(std::ostream& os, const SparseOperator& op);
SparseOperator read_triplets(std::istream& is, BasisKind kind);
void write_vector_triplets(std::ostream& os, const VecC& v);

}  // namespace z2m
