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

#include "z2meson/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "z2meson/kernels.hpp"

namespace z2m {

void LocalPropagator::apply(VecC& psi) const {
  for (std::size_t k = 0; k < single_idx.size(); ++k) psi[single_idx[k]] *= single_phase[k];
  for (std::size_t k = 0; k < pair_i.size(); ++k) {
    const cplx a = psi[pair_i[k]];
    const cplx b = psi[pair_j[k]];
    const auto& u = pair_u[k];
    psi[pair_i[k]] = u(0, 0) * a + u(0, 1) * b;
    psi[pair_j[k]] = u(1, 0) * a + u(1, 1) * b;
  }
}

LocalPropagator exponentiate_local(const SparseOperator& Hn, double delta) {
  LocalPropagator p;
  const auto& rp = Hn.rowptr();
  const auto& col = Hn.cols();
  const auto& val = Hn.values();
  const std::int64_t dim = Hn.dim();
  std::vector<std::int64_t> partner(dim, -1);
  VecC diag = VecC::Zero(dim);
  std::vector<cplx> off(dim, 0.0);
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t k = rp[r]; k < rp[r + 1]; ++k) {
      if (col[k] == r) {
        diag[r] += val[k];
      } else {
        if (partner[r] >= 0 && partner[r] != col[k]) {
          throw std::logic_error("exponentiate_local: term couples more than two states");
        }
        partner[r] = col[k];
        off[r] = val[k];
      }
    }
  }
  for (std::int64_t i = 0; i < dim; ++i) {
    const std::int64_t j = partner[i];
    if (j < 0) {
      p.single_idx.push_back(i);
      p.single_phase.push_back(std::exp(-kI * delta * diag[i].real()));
      continue;
    }
    if (j < i) continue;
    // Exact exponential of the Hermitian block [[a, b], [conj b, d]].
    const double a = diag[i].real(), d = diag[j].real();
    const cplx b = off[i];
    const double mu = 0.5 * (a + d), dl = 0.5 * (a - d);
    const double r = std::sqrt(dl * dl + std::norm(b));
    const double c = std::cos(r * delta);
    const double s = r > 0 ? std::sin(r * delta) / r : delta;
    const cplx ph = std::exp(-kI * delta * mu);
    Eigen::Matrix2cd u;
    u(0, 0) = ph * (c - kI * s * dl);
    u(1, 1) = ph * (c + kI * s * dl);
    u(0, 1) = ph * (-kI * s * b);
    u(1, 0) = ph * (-kI * s * std::conj(b));
    p.pair_i.push_back(i);
    p.pair_j.push_back(j);
    p.pair_u.push_back(u);
  }
  return p;
}

TrotterPlan make_trotter_plan(const ModelParams& p, const Basis& basis, double dt,
                              double t_final) {
  p.validate();
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  TrotterPlan plan;
  plan.dt = dt;
  plan.t_final = t_final;
  for (int n = 1; n <= p.L; ++n) {
    plan.terms.push_back(build_operator(basis, local_terms(p, n)));
    if (n % 2 == 1) {
      plan.odd_sites.push_back(n);
      plan.odd_half.push_back(exponentiate_local(plan.terms.back(), 0.5 * dt));
    } else {
      plan.even_sites.push_back(n);
      plan.even_full.push_back(exponentiate_local(plan.terms.back(), dt));
    }
  }
  return plan;
}

void trotter_step(VecC& psi, const TrotterPlan& plan) {
  for (const auto& u : plan.odd_half) u.apply(psi);
  for (const auto& u : plan.even_full) u.apply(psi);
  for (const auto& u : plan.odd_half) u.apply(psi);
}

VecC exact_evolve(const VecC& psi, const SparseOperator& H, double t, const KrylovOptions& opt) {
  VecC v = psi;
  if (t == 0.0) return v;
  const std::int64_t dim = H.dim();
  const auto n = static_cast<std::size_t>(dim);
  double done = 0.0;
  double tau = std::abs(t);
  const double sgn = t > 0 ? 1.0 : -1.0;
  while (done < std::abs(t)) {
    const double beta0 = std::sqrt(kernels::norm2(v));
    const int m = static_cast<int>(std::min<std::int64_t>(opt.krylov_dim, dim));
    std::vector<VecC> q{v / beta0};
    std::vector<double> alpha, beta;
    VecC w(dim);
    bool breakdown = false;
    for (int j = 0; j < m; ++j) {
      H.apply(q[j].data(), w.data());
      alpha.push_back(kernels::dotc(q[j], w).real());
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& qi : q) kernels::axpy(-kernels::dotc(qi, w), qi.data(), w.data(), n);
      }
      const double b = std::sqrt(kernels::norm2(w));
      beta.push_back(b);
      if (b < 1e-13 * (1.0 + std::abs(alpha.back()))) {
        breakdown = true;
        break;
      }
      if (j + 1 < m) q.push_back(w / b);
    }
    const int k = static_cast<int>(alpha.size());
    MatR T = MatR::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<MatR> es(T);
    const double remaining = std::abs(t) - done;
    double step = std::min(tau, remaining);
    VecC coef;
    for (;;) {
      VecC ph(k);
      for (int i = 0; i < k; ++i) ph[i] = std::exp(-kI * (sgn * step) * es.eigenvalues()[i]);
      coef = es.eigenvectors().cast<cplx>() *
             ph.cwiseProduct(es.eigenvectors().row(0).transpose().cast<cplx>());
      const double err = breakdown ? 0.0 : beta0 * beta.back() * std::abs(coef[k - 1]);
      if (err <= opt.tol * step / std::abs(t)) break;
      step *= 0.5;
      if (step < opt.min_step) throw std::runtime_error("exact_evolve: step size underflow");
    }
    VecC next = VecC::Zero(dim);
    for (int i = 0; i < k; ++i) kernels::axpy(beta0 * coef[i], q[i].data(), next.data(), n);
    v = next;
    done += step;
    tau = step * 1.5;
  }
  return v;
}

}  // namespace z2m
