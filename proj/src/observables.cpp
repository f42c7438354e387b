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

#include "z2meson/observables.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "z2meson/kernels.hpp"

namespace z2m {

SparseOperator meson_annihilator(const MesonSolution& s, const Basis& basis) {
  const int L = basis.L();
  std::vector<Term> t;
  for (int n = 1; n <= L; ++n) {
    for (int l = 1; l <= L; ++l) {
      const cplx a = s.coeffs[pair_index(n, l, L)];
      if (a == cplx{0.0, 0.0}) continue;
      t.push_back({std::conj(a), meson_word(l, n, L)});
    }
  }
  return build_operator(basis, t);
}

VecR chi_density(const VecC& psi, const Basis& basis) {
  const int L = basis.L();
  VecR chi = VecR::Zero(L);
  for (std::int64_t i = 0; i < basis.dim(); ++i) {
    const double w = std::norm(psi[i]);
    if (w == 0.0) continue;
    const Label s = basis.state(i);
    for (int n = 1; n <= L; ++n) {
      const bool occ = occupied(s, n);
      if ((n % 2 == 1) ? !occ : occ) chi[n - 1] += w;
    }
  }
  return chi;
}

VecR electric_field(const VecC& psi, const Basis& basis) {
  const int L = basis.L();
  VecR x = VecR::Zero(L);
  for (std::int64_t i = 0; i < basis.dim(); ++i) {
    const double w = std::norm(psi[i]);
    const Label s = basis.state(i);
    for (int n = 1; n <= L; ++n) x[n - 1] += w * x_value(s, n);
  }
  return x;
}

double meson_number(const VecC& psi, const std::vector<SparseOperator>& b) {
  double rho = 0.0;
  for (const auto& op : b) rho += kernels::norm2(op.apply(psi));
  return rho;
}

VecR string_probability(const VecC& psi, const QseMatrices& mats) {
  const int L = mats.L;
  VecR P = VecR::Zero(L / 2);
  const auto n = static_cast<std::size_t>(psi.size());
  for (int l = 1; l <= L / 2; ++l) {
    double s = 0.0;
    for (int a = 1; a <= L - l; ++a) {
      s += std::norm(kernels::dotc(psi.data(), mats.vectors.col(pair_index(a, a + l, L)).data(), n));
    }
    for (int a = l + 1; a <= L; ++a) {
      s += std::norm(kernels::dotc(psi.data(), mats.vectors.col(pair_index(a, a - l, L)).data(), n));
    }
    P[l - 1] = s;
  }
  return P;
}

double half_chain_entropy(const VecC& psi, const Basis& basis) {
  const int L = basis.L();
  const Label mask = (Label{1} << L) - 1;  // f_1 g_1 ... f_{L/2} g_{L/2}
  std::unordered_map<Label, Eigen::Index> rows, cols;
  std::vector<Eigen::Index> ri(basis.dim()), ci(basis.dim());
  for (std::int64_t i = 0; i < basis.dim(); ++i) {
    const Label s = basis.state(i);
    ri[i] = rows.try_emplace(s & mask, static_cast<Eigen::Index>(rows.size())).first->second;
    ci[i] = cols.try_emplace(s >> L, static_cast<Eigen::Index>(cols.size())).first->second;
  }
  MatC M = MatC::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::int64_t i = 0; i < basis.dim(); ++i) M(ri[i], ci[i]) = psi[i];
  const MatC rho = M.rows() <= M.cols() ? MatC(M * M.adjoint()) : MatC(M.adjoint() * M);
  Eigen::SelfAdjointEigenSolver<MatC> es(rho, Eigen::EigenvaluesOnly);
  double S = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p > 1e-15) S -= p * std::log2(p);
  }
  return S;
}

double gauss_residual(const VecC& psi, const std::vector<SparseOperator>& gauss) {
  double r = 0.0;
  const double nn = kernels::norm2(psi);
  for (const auto& g : gauss) r = std::max(r, std::abs(g.expectation(psi).real() / nn - 1.0));
  return r;
}

ObservableContext make_context(const ModelParams& p, const Basis& basis, const VecC& vacuum,
                               const QseResult& qse, const QseMatrices& mats) {
  ObservableContext c;
  c.params = p;
  c.basis = basis;
  c.H = build_hamiltonian_parts(p, basis);
  c.vacuum = vacuum;
  c.qse = &qse;
  c.mats = &mats;
  for (const auto* s : qse.accepted(-1)) c.b_vector.push_back(meson_annihilator(*s, basis));
  for (const auto* s : qse.accepted(1)) c.b_scalar.push_back(meson_annihilator(*s, basis));
  for (int n = 1; n <= p.L; ++n) c.gauss.push_back(build_gauss_generator(n, basis));
  c.chi0 = chi_density(vacuum, basis);
  c.x0 = electric_field(vacuum, basis);
  c.e_kin0 = c.H.kinetic.expectation(vacuum).real();
  c.e_mass0 = c.H.mass.expectation(vacuum).real();
  c.e_el0 = c.H.electric.expectation(vacuum).real();
  c.entropy0 = half_chain_entropy(vacuum, basis);
  return c;
}

Measurement measure_all(const VecC& psi, double t, const ObservableContext& ctx, bool with_rho) {
  Measurement m;
  m.t = t;
  m.norm = std::sqrt(kernels::norm2(psi));
  m.dchi = chi_density(psi, ctx.basis) - ctx.chi0;
  m.dx = electric_field(psi, ctx.basis) - ctx.x0;
  const double ek = ctx.H.kinetic.expectation(psi).real();
  const double em = ctx.H.mass.expectation(psi).real();
  const double ee = ctx.H.electric.expectation(psi).real();
  m.dE_kin = ek - ctx.e_kin0;
  m.dE_mass = em - ctx.e_mass0;
  m.dE_el = ee - ctx.e_el0;
  m.energy = ek + em + ee;
  if (with_rho) {
    m.rho_vector = meson_number(psi, ctx.b_vector);
    m.rho_scalar = meson_number(psi, ctx.b_scalar);
  } else {
    m.rho_vector = m.rho_scalar = std::nan("");
  }
  m.P = string_probability(psi, *ctx.mats);
  m.dS = half_chain_entropy(psi, ctx.basis) - ctx.entropy0;
  m.gauss_residual = gauss_residual(psi, ctx.gauss);
  return m;
}

}  // namespace z2m
