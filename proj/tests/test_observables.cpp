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

#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "z2meson/kernels.hpp"
#include "z2meson/observables.hpp"
#include "z2meson/scattering.hpp"

using namespace z2m;

namespace {

// Von Neumann entropy (bits) of qubits [0, L) of a full-space vector.
double dense_entropy(const VecC& full, int L) {
  const Eigen::Index left = Eigen::Index{1} << L;
  MatC M = Eigen::Map<const MatC>(full.data(), left, full.size() / left);
  Eigen::SelfAdjointEigenSolver<MatC> es(M * M.adjoint());
  double S = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p > 1e-15) S -= p * std::log2(p);
  }
  return S;
}

}  // namespace

TEST_CASE("densities match dense expectation values at L=4") {
  const auto& f = fixture::setup(4);
  std::mt19937_64 rng(12);
  VecC psi = oracle::random_state(f.basis.dim(), rng);
  Basis full = Basis::full(4);
  VecC pf = embed_in_full(psi, f.basis, full);
  oracle::Model o(4);
  VecR chi = chi_density(psi, f.basis), x = electric_field(psi, f.basis);
  for (int n = 1; n <= 4; ++n) {
    const double nn = pf.dot(o.num(n) * pf).real();
    CHECK(chi[n - 1] == doctest::Approx(n % 2 == 1 ? 1.0 - nn : nn).epsilon(1e-12));
    CHECK(x[n - 1] == doctest::Approx(pf.dot(o.link_x(n) * pf).real()).epsilon(1e-12));
  }
}

TEST_CASE("half-chain entropy agrees with a dense partial trace") {
  std::mt19937_64 rng(31);
  for (int L : {4, 6}) {
    CAPTURE(L);
    const auto& f = fixture::setup(L);
    Basis full = Basis::full(L);
    for (const VecC& psi : {VecC(f.omega()), oracle::random_state(f.basis.dim(), rng)}) {
      const double ref = dense_entropy(embed_in_full(psi, f.basis, full), L);
      CHECK(half_chain_entropy(psi, f.basis) == doctest::Approx(ref).epsilon(1e-10));
    }
    VecC prod = VecC::Zero(f.basis.dim());
    prod[0] = 1.0;
    CHECK(half_chain_entropy(prod, f.basis) == doctest::Approx(0.0));
  }
}

TEST_CASE("string probability follows its definition") {
  const auto& f = fixture::setup(6);
  const int L = 6;
  std::mt19937_64 rng(2);
  VecC psi = oracle::random_state(f.basis.dim(), rng);
  VecR P = string_probability(psi, f.mats);
  for (int l = 1; l <= L / 2; ++l) {
    double ref = 0;
    for (int n = 1; n <= L - l; ++n)
      ref += std::norm(psi.dot(meson_operator(n, n + l, f.basis).apply(f.omega())));
    for (int n = l + 1; n <= L; ++n)
      ref += std::norm(psi.dot(meson_operator(n, n - l, f.basis).apply(f.omega())));
    CHECK(P[l - 1] == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("vacuum gives vanishing differences") {
  const auto& f = fixture::setup(6);
  auto ctx = make_context(f.p, f.basis, f.omega(), f.qse, f.mats);
  auto m = measure_all(f.omega(), 0.0, ctx);
  CHECK(m.dchi.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(m.dx.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(m.dS) < 1e-12);
  CHECK(std::abs(m.dE_kin) + std::abs(m.dE_mass) + std::abs(m.dE_el) < 1e-12);
  CHECK((m.P - string_probability(f.omega(), f.mats)).norm() == 0.0);
  CHECK(m.gauss_residual < 1e-12);
  CHECK(std::abs(m.norm - 1.0) < 1e-12);
  CHECK(m.rho_vector < 0.01);
}

TEST_CASE("single zero-momentum vector meson counts as one meson") {
  const auto& f = fixture::setup(8);
  auto ctx = make_context(f.p, f.basis, f.omega(), f.qse, f.mats);
  auto exact = lowest_k(f.H, 4);
  disambiguate_with(f.C, exact, 1e-6);
  // First excited state: zero momentum, C = -1.
  const VecC& v = exact.vectors[1];
  REQUIRE(std::abs(f.C.expectation(v) + 1.0) < 1e-8);
  auto m = measure_all(v, 0.0, ctx);
  CHECK(m.rho_vector == doctest::Approx(1.0).epsilon(0.02));
  CHECK(m.rho_scalar < 0.02);
}

TEST_CASE("meson annihilator removes the meson it describes") {
  const auto& f = fixture::setup(6);
  const auto* s = f.qse.vector_meson(0);
  REQUIRE(s != nullptr);
  auto b = meson_annihilator(*s, f.basis);
  VecC one = meson_state(f.mats, s->coeffs);
  // b b^dag on the vacuum: <Omega| b b^dag |Omega> = S-norm = 1.
  CHECK(std::abs(f.omega().dot(b.apply(one)) - 1.0) < 1e-10);
  CHECK(std::abs(kernels::norm2(b.apply(f.omega())) - s->NZ) < 1e-10);
}

TEST_CASE("short elastic run keeps each energy part near its initial value") {
  ScatterConfig c;
  c.model = {8, 0.1, 1.0};
  c.kbar = 1;
  c.t_final = 4.0;
  c.measure_every = 5;
  auto tr = run_scattering(c);
  REQUIRE(!tr.rows.empty());
  for (const auto& r : tr.rows) {
    CHECK(std::abs(r.dE_kin) < 0.1 * tr.excitation_energy);
    CHECK(std::abs(r.dE_mass) < 0.1 * tr.excitation_energy);
    CHECK(std::abs(r.dE_el) < 0.1 * tr.excitation_energy);
    CHECK(std::abs(r.norm - 1.0) < 1e-8);
    CHECK(r.gauss_residual < 1e-8);
  }
}
