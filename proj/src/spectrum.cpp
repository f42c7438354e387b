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

#include "z2meson/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "z2meson/kernels.hpp"

namespace z2m {
namespace {

// Two passes of classical Gram-Schmidt against both sets.
void orthogonalize(VecC& w, const std::vector<VecC>& a, const std::vector<VecC>& b) {
  const auto n = static_cast<std::size_t>(w.size());
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto* set : {&a, &b}) {
      for (const auto& q : *set) {
        const cplx c = kernels::dotc(q.data(), w.data(), n);
        kernels::axpy(-c, q.data(), w.data(), n);
      }
    }
  }
}

struct RitzPair {
  double value;
  VecC vector;
  double residual;
};

RitzPair lanczos_run(const SparseOperator& H, const std::vector<VecC>& locked,
                     VecC v0, int m) {
  const std::int64_t dim = H.dim();
  std::vector<VecC> basis;
  std::vector<double> alpha, beta;
  orthogonalize(v0, locked, basis);
  v0 /= std::sqrt(kernels::norm2(v0));
  basis.push_back(v0);
  VecC w(dim);
  for (int j = 0; j < m; ++j) {
    H.apply(basis[j].data(), w.data());
    alpha.push_back(kernels::dotc(basis[j], w).real());
    orthogonalize(w, locked, basis);
    const double b = std::sqrt(kernels::norm2(w));
    if (j + 1 == m || b < 1e-12) break;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  const int n = static_cast<int>(alpha.size());
  MatR T = MatR::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < n) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<MatR> es(T);
  const VecR y = es.eigenvectors().col(0);
  VecC x = VecC::Zero(dim);
  for (int i = 0; i < n; ++i) x += y[i] * basis[i];
  orthogonalize(x, locked, {});
  x /= std::sqrt(kernels::norm2(x));
  const double theta = H.expectation(x).real();
  VecC r = H.apply(x);
  r -= theta * x;
  return {theta, x, std::sqrt(kernels::norm2(r))};
}

}  // namespace

EigenSolution lowest_k(const SparseOperator& H, int k, const LanczosOptions& opt) {
  const std::int64_t dim = H.dim();
  if (k < 1 || k > dim) throw std::invalid_argument("lowest_k: k out of range");
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  EigenSolution sol;
  for (int found = 0; found < k; ++found) {
    VecC v(dim);
    for (std::int64_t i = 0; i < dim; ++i) v[i] = {uni(rng), uni(rng)};
    const int m = static_cast<int>(std::min<std::int64_t>(opt.krylov_dim, dim - found));
    RitzPair best{0.0, {}, std::numeric_limits<double>::infinity()};
    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
      RitzPair rp = lanczos_run(H, sol.vectors, v, m);
      if (rp.residual < best.residual) best = rp;
      if (rp.residual < opt.tol) break;
      v = rp.vector;
    }
    if (!(best.residual < opt.tol)) {
      std::ostringstream os;
      os << "lowest_k: eigenpair " << found << " did not converge, best residual "
         << best.residual;
      throw std::runtime_error(os.str());
    }
    sol.energies.push_back(best.value);
    sol.vectors.push_back(best.vector);
    sol.residuals.push_back(best.residual);
  }
  std::vector<std::size_t> order(sol.energies.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sol.energies[a] < sol.energies[b];
  });
  EigenSolution sorted;
  for (auto i : order) {
    sorted.energies.push_back(sol.energies[i]);
    sorted.vectors.push_back(sol.vectors[i]);
    sorted.residuals.push_back(sol.residuals[i]);
  }
  return sorted;
}

EigenSolution ground_state(const SparseOperator& H, const LanczosOptions& opt) {
  return lowest_k(H, 1, opt);
}

void disambiguate_with(const SparseOperator& C, EigenSolution& sol, double degeneracy_tol) {
  const std::size_t n = sol.energies.size();
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && sol.energies[end] - sol.energies[end - 1] < degeneracy_tol) ++end;
    const auto g = static_cast<Eigen::Index>(end - start);
    if (g > 1) {
      MatC Q(sol.vectors[start].size(), g);
      for (Eigen::Index i = 0; i < g; ++i) Q.col(i) = sol.vectors[start + i];
      MatC CQ(Q.rows(), g);
      for (Eigen::Index i = 0; i < g; ++i) CQ.col(i) = C.apply(VecC(Q.col(i)));
      const MatC Cg = Q.adjoint() * CQ;
      Eigen::ComplexSchur<MatC> schur(Cg);
      const MatC R = Q * schur.matrixU();
      for (Eigen::Index i = 0; i < g; ++i) {
        VecC v = R.col(i);
        v /= v.norm();
        sol.vectors[start + i] = v;
      }
    }
    start = end;
  }
}

EigenSolution dense_spectrum(const SparseOperator& H) {
  const MatC D = H.to_dense();
  Eigen::SelfAdjointEigenSolver<MatC> es(D);
  EigenSolution sol;
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    const VecC v = es.eigenvectors().col(i);
    sol.energies.push_back(es.eigenvalues()[i]);
    sol.vectors.push_back(v);
    sol.residuals.push_back((D * v - es.eigenvalues()[i] * v).norm());
  }
  return sol;
}

}  // namespace z2m
