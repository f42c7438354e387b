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

#include "z2meson/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "z2meson/kernels.hpp"

namespace z2m {

SparseOperator::SparseOperator(BasisKind kind, std::int64_t dim,
                               std::vector<Triplet> entries)
    : kind_(kind), dim_(dim) {
  if (dim > std::numeric_limits<std::int32_t>::max()) {
    throw std::invalid_argument("SparseOperator: dimension too large");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  rowptr_.assign(static_cast<std::size_t>(dim) + 1, 0);
  col_.reserve(entries.size());
  val_.reserve(entries.size());
  std::size_t i = 0;
  for (std::int64_t r = 0; r < dim; ++r) {
    while (i < entries.size() && entries[i].row == r) {
      const std::int64_t c = entries[i].col;
      if (c < 0 || c >= dim) {
        throw std::out_of_range("SparseOperator: column index out of range");
      }
      cplx v = entries[i].value;
      ++i;
      while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
        v += entries[i].value;
        ++i;
      }
      if (v != cplx{0.0, 0.0}) {
        col_.push_back(static_cast<std::int32_t>(c));
        val_.push_back(v);
      }
    }
    rowptr_[static_cast<std::size_t>(r) + 1] = static_cast<std::int64_t>(val_.size());
  }
  if (i != entries.size()) {
    throw std::out_of_range("SparseOperator: row index out of range");
  }
}

SparseOperator SparseOperator::identity(BasisKind kind, std::int64_t dim) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < dim; ++i) t.push_back({i, i, 1.0});
  return {kind, dim, std::move(t)};
}

SparseOperator SparseOperator::diagonal(BasisKind kind, const VecC& d) {
  std::vector<Triplet> t;
  for (Eigen::Index i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return {kind, d.size(), std::move(t)};
}

void SparseOperator::apply(const cplx* x, cplx* y) const {
  kernels::active().csr_matvec(static_cast<std::size_t>(dim_), rowptr_.data(),
                               col_.data(), val_.data(), x, y);
}

VecC SparseOperator::apply(const VecC& x) const {
  if (x.size() != dim_) throw std::invalid_argument("apply: size mismatch");
  VecC y(dim_);
  apply(x.data(), y.data());
  return y;
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> t;
  t.reserve(val_.size());
  for (std::int64_t r = 0; r < dim_; ++r) {
    for (std::int64_t k = rowptr_[r]; k < rowptr_[r + 1]; ++k) {
      t.push_back({r, col_[k], val_[k]});
    }
  }
  return t;
}

SparseOperator SparseOperator::adjoint() const {
  auto t = triplets();
  for (auto& e : t) {
    std::swap(e.row, e.col);
    e.value = std::conj(e.value);
  }
  return {kind_, dim_, std::move(t)};
}

SparseOperator SparseOperator::scaled(cplx a) const {
  SparseOperator out = *this;
  for (auto& v : out.val_) v *= a;
  return out;
}

SparseOperator SparseOperator::combined(cplx a, const SparseOperator& other,
                                        cplx b) const {
  if (other.dim_ != dim_) throw std::invalid_argument("combined: dim mismatch");
  auto t = triplets();
  for (auto& e : t) e.value *= a;
  for (auto e : other.triplets()) {
    e.value *= b;
    t.push_back(e);
  }
  return {kind_, dim_, std::move(t)};
}

SparseOperator SparseOperator::product(const SparseOperator& right) const {
  if (right.dim_ != dim_) throw std::invalid_argument("product: dim mismatch");
  std::vector<Triplet> t;
  for (std::int64_t r = 0; r < dim_; ++r) {
    for (std::int64_t k = rowptr_[r]; k < rowptr_[r + 1]; ++k) {
      const std::int64_t m = col_[k];
      for (std::int64_t q = right.rowptr_[m]; q < right.rowptr_[m + 1]; ++q) {
        t.push_back({r, right.col_[q], val_[k] * right.val_[q]});
      }
    }
  }
  return {kind_, dim_, std::move(t)};
}

MatC SparseOperator::to_dense() const {
  MatC d = MatC::Zero(dim_, dim_);
  for (std::int64_t r = 0; r < dim_; ++r) {
    for (std::int64_t k = rowptr_[r]; k < rowptr_[r + 1]; ++k) {
      d(r, col_[k]) += val_[k];
    }
  }
  return d;
}

double SparseOperator::hermiticity_defect() const {
  const auto diff = combined(1.0, adjoint(), -1.0);
  double m = 0.0;
  for (const auto& v : diff.val_) m = std::max(m, std::abs(v));
  return m;
}

cplx SparseOperator::expectation(const VecC& psi) const {
  const VecC hp = apply(psi);
  return kernels::dotc(psi, hp);
}

void write_triplets(std::ostream& os, const SparseOperator& op) {
  os << "# dim " << op.dim() << " nnz " << op.nnz() << '\n';
  os << std::setprecision(17);
  for (const auto& e : op.triplets()) {
    os << e.row << ' ' << e.col << ' ' << e.value.real() << ' '
       << e.value.imag() << '\n';
  }
}

SparseOperator read_triplets(std::istream& is, BasisKind kind) {
  std::string line;
  std::int64_t dim = -1;
  std::vector<Triplet> t;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "dim") ls >> dim;
      continue;
    }
    Triplet e{};
    double re = 0.0, im = 0.0;
    if (!(ls >> e.row >> e.col >> re >> im)) {
      throw std::runtime_error("read_triplets: malformed line: " + line);
    }
    e.value = {re, im};
    t.push_back(e);
  }
  if (dim < 0) throw std::runtime_error("read_triplets: missing dim header");
  return {kind, dim, std::move(t)};
}

void write_vector_triplets(std::ostream& os, const VecC& v) {
  os << "# dim " << v.size() << " nnz " << v.size() << '\n';
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    os << i << " 0 " << v[i].real() << ' ' << v[i].imag() << '\n';
  }
}

}  // namespace z2m
