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

// Dense reference operators for tests, assembled from single-qubit matrices
// without going through the library's word machinery.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "z2meson/types.hpp"

namespace oracle {

using z2m::cplx;
using z2m::MatC;
using z2m::VecC;

// Basis index bit q is qubit q. Matter qubit of site n is 2(n-1), link qubit 2(n-1)+1.
// Matter bit 1 = occupied. Link bit 0 = electric field +1.
inline int fq(int n) { return 2 * (n - 1); }
inline int gq(int n) { return 2 * (n - 1) + 1; }

inline MatC one_qubit(const Eigen::Matrix2cd& m, int q, int nq) {
  const Eigen::Index d = Eigen::Index{1} << nq;
  MatC out = MatC::Zero(d, d);
  for (Eigen::Index s = 0; s < d; ++s) {
    const int b = static_cast<int>((s >> q) & 1);
    for (int a = 0; a < 2; ++a) {
      const cplx v = m(a, b);
      if (v == cplx{}) continue;
      const Eigen::Index t = (s & ~(Eigen::Index{1} << q)) | (Eigen::Index{a} << q);
      out(t, s) += v;
    }
  }
  return out;
}

inline Eigen::Matrix2cd pauli_x() { Eigen::Matrix2cd m; m << 0, 1, 1, 0; return m; }
inline Eigen::Matrix2cd pauli_z() { Eigen::Matrix2cd m; m << 1, 0, 0, -1; return m; }
inline Eigen::Matrix2cd raise() { Eigen::Matrix2cd m; m << 0, 0, 1, 0; return m; }  // |1><0|

struct Model {
  int L;
  int nq;
  explicit Model(int L_) : L(L_), nq(2 * L_) {}
  Eigen::Index dim() const { return Eigen::Index{1} << nq; }
  // sigma^z = +1 on an occupied site.
  MatC sz(int n) const { return -one_qubit(pauli_z(), fq(n), nq); }
  MatC num(int n) const { return (sz(n) + MatC::Identity(dim(), dim())) / 2.0; }
  MatC link_x(int n) const { return one_qubit(pauli_z(), gq(n), nq); }
  MatC link_z(int n) const { return one_qubit(pauli_x(), gq(n), nq); }
  MatC create(int n) const {
    MatC m = one_qubit(raise(), fq(n), nq);
    for (int l = 1; l < n; ++l) m = (cplx{0, -1} * sz(l)) * m;
    return m;
  }
  MatC destroy(int n) const { return create(n).adjoint(); }
  MatC hamiltonian(double mass, double eps) const {
    MatC h = MatC::Zero(dim(), dim());
    for (int n = 1; n <= L; ++n) {
      const int n1 = n == L ? 1 : n + 1;
      MatC hop = create(n) * link_z(n) * destroy(n1);
      h += 0.5 * (hop + hop.adjoint());
      h += mass * (n % 2 == 0 ? 1.0 : -1.0) * num(n);
      h += eps * link_x(n);
    }
    return h;
  }
  // Hadamard on every link qubit: maps this basis to the circuit basis.
  MatC link_hadamards() const {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    MatC out = MatC::Identity(dim(), dim());
    for (int n = 1; n <= L; ++n) out = one_qubit(h, gq(n), nq) * out;
    return out;
  }
  MatC gauss(int n) const {
    const int prev = n == 1 ? L : n - 1;
    // exp(i pi Q_n) = sz on odd sites, -sz on even sites.
    const double sign = n % 2 == 1 ? 1.0 : -1.0;
    return sign * link_x(prev) * sz(n) * link_x(n);
  }
};

// Operators in the circuit basis, where link qubits carry Z eigenstates.
struct CircuitModel {
  int L;
  Model o;
  MatC Hl;
  explicit CircuitModel(int L_) : L(L_), o(L_), Hl(o.link_hadamards()) {}
  MatC conv(const MatC& m) const { return Hl * m * Hl; }
  Eigen::Index dim() const { return o.dim(); }
  // Dressed matter creation xi_n^dag prod_{l<n} Z_{g,l}.
  MatC xi_dressed_dag(int n) const {
    MatC m = o.create(n);
    for (int l = 1; l < n; ++l) m = m * o.link_z(l);
    return conv(m);
  }
  // Gauge-link fermion: occupied is |0>, string prod_{l<n}(-i Z_l) on link qubits.
  MatC psi_g_dag(int n) const {
    MatC m = MatC::Zero(dim(), dim());
    const int q = gq(n);
    for (Eigen::Index s = 0; s < dim(); ++s) {
      if (!((s >> q) & 1)) continue;
      cplx amp = 1;
      for (int l = 1; l < n; ++l) amp *= cplx(0, -1) * (((s >> gq(l)) & 1) ? -1.0 : 1.0);
      m(s ^ (Eigen::Index{1} << q), s) = amp;
    }
    return m;
  }
  MatC x_tilde(int n) const {
    const MatC d = psi_g_dag(n);
    return (d + d.adjoint()) / std::sqrt(2.0);
  }
  // Pauli-Z string on matter qubits; sigma^z = +1 on occupied.
  MatC pauli(const std::vector<int>& sites) const {
    MatC m = MatC::Identity(dim(), dim());
    for (int s : sites) m = m * conv(o.sz(s));
    return m;
  }
};

inline MatC expm_hermitian(const MatC& H, double t) {
  Eigen::SelfAdjointEigenSolver<MatC> es(H);
  VecC ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph[i] = std::polar(1.0, -t * es.eigenvalues()[i]);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline MatC random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  MatC a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<MatC> qr(a);
  return qr.householderQ();
}

inline VecC random_state(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  VecC v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = cplx(nd(rng), nd(rng));
  return v / v.norm();
}

inline double fidelity(const VecC& a, const VecC& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

inline double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
