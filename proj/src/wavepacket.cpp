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

#include "z2meson/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace z2m {

namespace {
// The phase reference pair (2, 1) of every a^(k) sits at x = 1/2.
constexpr double kReferenceCenter = 0.5;
}  // namespace

void WavePacketSpec::validate() const {
  if (!(sigma_k > 0)) throw std::invalid_argument("sigma_k must be positive");
  if (lambda_star.empty()) throw std::invalid_argument("lambda_star is empty");
  bool found = false;
  for (int k : lambda_star) found = found || k == kbar;
  if (!found) throw std::invalid_argument("kbar is not in lambda_star");
}

std::map<int, cplx> gaussian_profile(const WavePacketSpec& spec, int L) {
  if (spec.lambda_star.empty()) throw std::invalid_argument("lambda_star is empty");
  if (!(spec.sigma_k > 0)) throw std::invalid_argument("sigma_k must be positive");
  const double dk = 2.0 * std::numbers::pi / L;
  std::map<int, cplx> phi;
  double norm = 0.0;
  for (int j : spec.lambda_star) {
    const double k = dk * j;
    const double d = dk * wrap_momentum(j - spec.kbar, L);
    const cplx v = std::exp(-kI * k * (spec.xbar - kReferenceCenter)) *
                   std::exp(-d * d / (4.0 * spec.sigma_k * spec.sigma_k));
    phi[j] = v;
    norm += std::norm(v);
  }
  for (auto& [j, v] : phi) v /= std::sqrt(norm);
  return phi;
}

VecC position_profile(const WavePacketSpec& spec, int L) {
  const auto phi = gaussian_profile(spec, L);
  VecC f = VecC::Zero(L);
  for (int x = 0; x < L; ++x) {
    for (const auto& [j, v] : phi) {
      f[x] += v * std::exp(kI * (2.0 * std::numbers::pi * j * x / L));
    }
  }
  return f / std::sqrt(static_cast<double>(L));
}

RingMoments ring_moments(const VecR& w) {
  const auto L = w.size();
  cplx z = 0.0;
  double tot = 0.0;
  for (Eigen::Index x = 0; x < L; ++x) {
    z += w[x] * std::exp(kI * (2.0 * std::numbers::pi * x / L));
    tot += w[x];
  }
  double mean = std::arg(z) * L / (2.0 * std::numbers::pi);
  if (mean < 0) mean += L;
  double var = 0.0;
  for (Eigen::Index x = 0; x < L; ++x) {
    double d = std::remainder(static_cast<double>(x) - mean, static_cast<double>(L));
    var += w[x] * d * d;
  }
  return {mean, std::sqrt(var / tot)};
}

std::vector<Term> bilinear_terms(const MatC& coef, bool shortest_path) {
  const int L = static_cast<int>(coef.rows());
  std::vector<Term> t;
  for (int n = 1; n <= L; ++n) {
    for (int l = 1; l <= L; ++l) {
      const cplx c = coef(n - 1, l - 1);
      if (c == cplx{0.0, 0.0}) continue;
      t.push_back({c, shortest_path ? meson_word(n, l, L) : direct_dressed_word(n, l)});
    }
  }
  return t;
}

PacketOperator build_packet_operator(const WavePacketSpec& spec, const QseResult& qse,
                                     const Basis& basis) {
  spec.validate();
  const int L = basis.L();
  const auto phi = gaussian_profile(spec, L);
  PacketOperator p;
  p.Mb = MatC::Zero(L, L);
  for (const auto& [k, v] : phi) {
    const MesonSolution* s = qse.vector_meson(k);
    if (s == nullptr) {
      throw std::invalid_argument("no vector-meson solution for k = " + std::to_string(k));
    }
    for (int n = 1; n <= L; ++n) {
      for (int l = 1; l <= L; ++l) p.Mb(n - 1, l - 1) += v * s->coeffs[pair_index(n, l, L)];
    }
  }
  p.Mcoef = 0.5 * (p.Mb + p.Mb.adjoint());
  Eigen::SelfAdjointEigenSolver<MatC> es(p.Mcoef);
  p.eigvals = es.eigenvalues();
  p.u = es.eigenvectors();
  p.B_dag = build_operator(basis, bilinear_terms(p.Mb, true));
  p.A = build_operator(basis, bilinear_terms(p.Mcoef, true));
  p.A_direct = build_operator(basis, bilinear_terms(p.Mcoef, false));
  return p;
}

VecC initial_state(const WavePacketSpec& s1, const WavePacketSpec& s2, const QseResult& qse,
                   const VecC& ground, const Basis& basis) {
  const PacketOperator p1 = build_packet_operator(s1, qse, basis);
  const PacketOperator p2 = build_packet_operator(s2, qse, basis);
  VecC psi = p1.B_dag.apply(p2.B_dag.apply(ground));
  const double n = psi.norm();
  if (n < 1e-12) throw std::runtime_error("initial_state: B1^dag B2^dag |Omega> vanishes");
  return psi / n;
}

}  // namespace z2m
