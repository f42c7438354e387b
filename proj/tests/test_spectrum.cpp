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

#include <algorithm>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "z2meson/lattice.hpp"
#include "z2meson/spectrum.hpp"

using namespace z2m;

TEST_CASE("diagonal operator returns its minimum entry") {
  VecC d(6);
  d << 3.0, -1.5, 2.0, 7.0, -0.5, 0.0;
  auto gs = ground_state(SparseOperator::diagonal(BasisKind::Sector, d));
  CHECK(gs.energies[0] == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(std::abs(gs.vectors[0][1]) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ground state matches dense diagonalization at L=6") {
  ModelParams p{6, 0.1, 1.0};
  auto H = build_hamiltonian(p, Basis::sector(6));
  auto gs = ground_state(H);
  auto dense = Eigen::SelfAdjointEigenSolver<MatC>(H.to_dense());
  CHECK(std::abs(gs.energies[0] - dense.eigenvalues()[0]) < 1e-10);
  CHECK(gs.residuals[0] < 1e-10);
}

TEST_CASE("full spectrum at L=4 equals the dense oracle") {
  ModelParams p{4, 0.1, 1.0};
  auto H = build_hamiltonian(p, Basis::sector(4));
  const int d = static_cast<int>(H.dim());
  auto sol = lowest_k(H, d);
  auto dense = Eigen::SelfAdjointEigenSolver<MatC>(H.to_dense());
  REQUIRE(sol.energies.size() == static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) CHECK(std::abs(sol.energies[i] - dense.eigenvalues()[i]) < 1e-10);
}

TEST_CASE("lowest_k returns orthonormal, ascending, converged pairs") {
  ModelParams p{6, 0.1, 1.0};
  auto H = build_hamiltonian(p, Basis::sector(6));
  auto sol = lowest_k(H, 10);
  REQUIRE(sol.vectors.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(sol.residuals[i] < 1e-9);
    if (i > 0) CHECK(sol.energies[i] >= sol.energies[i - 1] - 1e-12);
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(sol.vectors[i].dot(sol.vectors[j])) < 1e-9);
    CHECK(std::abs(sol.vectors[i].norm() - 1.0) < 1e-12);
  }
  auto one = lowest_k(H, 1);
  CHECK(std::abs(one.energies[0] - ground_state(H).energies[0]) < 1e-12);
}

TEST_CASE("degenerate momentum pairs are split by C and share an energy") {
  ModelParams p{6, 0.1, 1.0};
  Basis b = Basis::sector(6);
  auto H = build_hamiltonian(p, b);
  auto C = build_charge_conjugation(p, b);
  auto sol = lowest_k(H, 12);
  disambiguate_with(C, sol, 1e-8);
  int pairs = 0;
  for (std::size_t i = 0; i + 1 < sol.energies.size(); ++i) {
    if (sol.energies[i + 1] - sol.energies[i] > 1e-8) continue;
    const cplx c0 = sol.vectors[i].dot(C.apply(sol.vectors[i]));
    const cplx c1 = sol.vectors[i + 1].dot(C.apply(sol.vectors[i + 1]));
    // Each partner is a C eigenvector with conjugate eigenvalue.
    CHECK(std::abs(std::abs(c0) - 1.0) < 1e-8);
    CHECK(std::abs(c0 - std::conj(c1)) < 1e-8);
    CHECK(sol.energies[i + 1] - sol.energies[i] < 1e-9);
    ++pairs;
    ++i;
  }
  CHECK(pairs > 0);
}

TEST_CASE("eigenvalues do not depend on basis ordering") {
  ModelParams p{6, 0.3, 0.7};
  auto H = build_hamiltonian(p, Basis::sector(6));
  const auto d = H.dim();
  std::vector<std::int64_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Triplet> t;
  for (const auto& e : H.triplets()) t.push_back({perm[e.row], perm[e.col], e.value});
  SparseOperator Hp(BasisKind::Sector, d, t);
  auto a = lowest_k(H, 6), b2 = lowest_k(Hp, 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(a.energies[i] - b2.energies[i]) < 1e-9);
}
