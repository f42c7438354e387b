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

#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "z2meson/circuits.hpp"
#include "z2meson/simulator.hpp"
#include "z2meson/wavepacket.hpp"

using namespace z2m;

namespace {

double max_abs(const MatC& m) { return m.cwiseAbs().maxCoeff(); }

int rotations(const GivensCircuit& c) {
  int n = 0;
  for (const auto& g : c.gates)
    n += g.kind == GateKind::MatterRotation || g.kind == GateKind::GaugeRotation ||
         g.kind == GateKind::DressedRotation;
  return n;
}

}  // namespace

TEST_CASE("expansion into primitives reproduces the compact gates") {
  for (auto k : {GateKind::MatterRotation, GateKind::GaugeRotation, GateKind::DressedRotation}) {
    GivensGate g{k, {0, 1, 2, 3}, 0.37};
    if (k == GateKind::GaugeRotation) g.qubits = {0, 1};
    if (k == GateKind::MatterRotation) g.qubits = {0, 1, 2};
    GivensCircuit c;
    c.num_qubits = 4;
    c.gates = {g};
    CHECK(max_abs(circuit_unitary(c, true) - circuit_unitary(c, false)) < 1e-12);
  }
}

TEST_CASE("matter rotation is the exponential of the dressed hopping generator") {
  oracle::CircuitModel co(4);
  const double th = 0.41;
  for (int a = 1; a < 4; ++a) {
    MatC K = th * co.xi_dressed_dag(a) * co.xi_dressed_dag(a + 1).adjoint();
    K = K - K.adjoint().eval();
    // exp(K) with K anti-Hermitian.
    MatC U = oracle::expm_hermitian(cplx(0, 1) * K, 1.0);
    GivensCircuit c;
    c.num_qubits = 8;
    c.gates = {GivensGate{GateKind::MatterRotation,
                          {2 * (a - 1), 2 * a, 2 * (a - 1) + 1}, th}};
    CHECK(max_abs(circuit_unitary(c, false) - U) < 1e-12);
  }
}

TEST_CASE("Givens QR reconstructs the unitary with the parallel schedule") {
  std::mt19937_64 rng(7);
  for (int L : {4, 6, 8}) {
    MatC u = oracle::random_unitary(L, rng);
    auto ops = givens_qr(u);
    CHECK(max_abs(mode_matrix(ops, L) - u) < 1e-12);
    auto V = decompose_V(u, Flavor::Matter, Columns::All);
    CHECK(rotations(V) == L * (L - 1) / 2);
    std::set<int> layers;
    for (const auto& g : V.gates)
      if (g.kind == GateKind::MatterRotation) layers.insert(g.layer);
    CHECK(static_cast<int>(layers.size()) == 2 * L - 3);
    auto cnt = count_resources(V);
    CHECK(cnt.cnot_total == 2 * L * (L - 1));
    CHECK(cnt.cnot_depth == 4 * (2 * L - 3));
    auto F = decompose_V(u, Flavor::Matter, Columns::First);
    CHECK(rotations(F) == L - 1);
  }
  CHECK(rotations(decompose_V(MatC::Identity(4, 4), Flavor::Matter, Columns::All)) == 0);
  CHECK(decompose_V(MatC::Identity(4, 4), Flavor::Matter, Columns::All).gates.empty());
  MatC bad = MatC::Identity(4, 4);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(decompose_V(bad, Flavor::Matter, Columns::All), std::invalid_argument);
  PauliZStrings p = default_pauli_strings(4);
  p[0] = {2};
  CHECK_THROWS_AS(decompose_V(MatC::Identity(4, 4), Flavor::Dressed, Columns::All, p),
                  std::invalid_argument);
}

TEST_CASE("mode transformation identities on random unitaries") {
  oracle::CircuitModel co(4);
  std::mt19937_64 rng(19);
  std::vector<MatC> xs;
  for (int n = 1; n <= 4; ++n) xs.push_back(co.xi_dressed_dag(n));
  for (int trial = 0; trial < 5; ++trial) {
    MatC u = oracle::random_unitary(4, rng), v = oracle::random_unitary(4, rng);
    MatC Vu = circuit_unitary(decompose_V(u, Flavor::Matter, Columns::All), false);
    MatC Vv = circuit_unitary(decompose_V(v, Flavor::Matter, Columns::All), false);
    MatC Vvu = circuit_unitary(decompose_V(v * u, Flavor::Matter, Columns::All), false);
    CHECK(max_abs(Vv * Vu - Vvu) < 1e-9);
    double err = 0;
    for (int r = 0; r < 4; ++r) {
      MatC rhs = MatC::Zero(co.dim(), co.dim());
      for (int n = 0; n < 4; ++n) rhs += u(n, r) * xs[n];
      err = std::max(err, max_abs(Vu * xs[r] * Vu.adjoint() - rhs));
    }
    CHECK(err < 1e-9);
  }
}

TEST_CASE("dressed gauge fermions obey canonical anticommutation") {
  oracle::CircuitModel co(4);
  auto P = default_pauli_strings(4);
  std::vector<MatC> d;
  for (int n = 1; n <= 4; ++n) d.push_back(co.pauli(P[n - 1]) * co.psi_g_dag(n));
  for (int n = 0; n < 4; ++n)
    for (int l = 0; l < 4; ++l) {
      MatC ac = d[n].adjoint() * d[l] + d[l] * d[n].adjoint();
      MatC expect = n == l ? MatC(MatC::Identity(co.dim(), co.dim())) : MatC(MatC::Zero(co.dim(), co.dim()));
      CHECK(max_abs(ac - expect) < 1e-12);
      CHECK(max_abs(d[n] * d[l] + d[l] * d[n]) < 1e-12);
    }
}

TEST_CASE("O_a, O_b and their anticommutator match dense constructions") {
  oracle::CircuitModel co(4);
  auto P = default_pauli_strings(4);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 3; ++trial) {
    VecR lam(4);
    for (int i = 0; i < 4; ++i) lam[i] = nd(rng);
    const double s = o_norm(lam);
    auto Oa = build_Oa(lam);
    auto Ob = build_Ob(lam, P);
    CHECK(count_resources(Oa).cnot_total == 4 * (4 - 1));
    MatC A = circuit_unitary(Oa, true) * s;
    MatC B = circuit_unitary(Ob, true) * s;
    MatC refA = MatC::Zero(co.dim(), co.dim()), refB = refA, sum = refA;
    for (int n = 1; n <= 4; ++n) {
      const double r = std::sqrt(std::abs(lam[n - 1]));
      refA += (lam[n - 1] < 0 ? -r : r) * co.x_tilde(n);
      refB += r * co.pauli(P[n - 1]) * co.x_tilde(n);
      sum += lam[n - 1] * co.pauli(P[n - 1]);
    }
    CHECK(max_abs(A - refA) < 1e-9);
    CHECK(max_abs(B - refB) < 1e-9);
    CHECK(max_abs(A * B + B * A - sum) < 1e-9);
  }
  CHECK_THROWS_AS(build_Oa(VecR::Zero(4)), std::invalid_argument);
}

TEST_CASE("single weight reduces O_a to a bare X on the first link") {
  VecR lam = VecR::Zero(4);
  lam[0] = 0.7;
  auto Oa = build_Oa(lam);
  CHECK(rotations(Oa) == 0);
  CHECK(count_resources(Oa).cnot_total == 0);
  GivensCircuit x;
  x.num_qubits = 8;
  x.gates = {GivensGate{GateKind::X, {1}, 0.0}};
  MatC U = circuit_unitary(Oa, true), X = circuit_unitary(x, true);
  // Equal up to a global phase.
  const cplx ph = (X.adjoint() * U).trace() / static_cast<double>(U.rows());
  CHECK(std::abs(std::abs(ph) - 1.0) < 1e-12);
  CHECK(max_abs(U - ph * X) < 1e-12);
}

TEST_CASE("dressed rotation cost grows with the string support") {
  // Two CNOTs for the core plus two per string qubit.
  for (int w = 0; w <= 2; ++w) {
    std::vector<int> q{0, 1};
    for (int i = 0; i < w; ++i) q.push_back(2 + i);
    GivensCircuit c;
    c.num_qubits = 4;
    c.gates = {GivensGate{GateKind::DressedRotation, q, 0.2}};
    CHECK(count_resources(c).cnot_total == 2 + 2 * w);
  }
}

TEST_CASE("simulator basics") {
  std::mt19937_64 rng(1);
  GivensCircuit empty;
  empty.num_qubits = 3;
  VecC in = oracle::random_state(8, rng);
  auto r = simulate_circuit(empty, in);
  CHECK((r.state - in).norm() == 0.0);
  CHECK(r.probability == 1.0);

  GivensCircuit cx;
  cx.num_qubits = 2;
  cx.gates = {GivensGate{GateKind::CX, {0, 1}, 0.0}};
  // Bit 0 is the control.
  const int expect[4] = {0, 3, 2, 1};
  for (int s = 0; s < 4; ++s) {
    VecC e = VecC::Zero(4);
    e[s] = 1.0;
    auto o = simulate_circuit(cx, e);
    CHECK(std::abs(o.state[expect[s]] - 1.0) < 1e-15);
  }
}

TEST_CASE("packet circuit is unitary and realizes the Hermitian packet operator") {
  for (int L : {4, 6}) {
    CAPTURE(L);
    const auto& f = fixture::setup(L);
    WavePacketSpec s;
    s.kbar = 1;
    s.xbar = (L - 1) / 2.0;
    s.sigma_k = 2.0 * std::numbers::pi / L;
    s.lambda_star = f.qse.lambda_star();
    auto pk = build_packet_operator(s, f.qse, f.basis);
    auto circ = assemble_packet_circuit(pk);
    CHECK(circ.ancilla == 2 * L);

    std::mt19937_64 rng(40 + L);
    VecC rnd = oracle::random_state(Eigen::Index{1} << (2 * L + 1), rng);
    CHECK(std::abs(simulate_circuit(circ, rnd).state.norm() - 1.0) < 1e-12);

    VecC in = sector_to_register(f.omega(), f.basis, true);
    auto r = simulate_circuit(circ, in, 0);
    double leak = 1;
    VecC out = register_to_sector(r.state, f.basis, &leak);
    CHECK(leak < 1e-12);
    VecC target = pk.A_direct.apply(f.omega());
    CHECK(oracle::fidelity(out, target) >= 0.999);
    const double lsum = diagonal_weights(pk.eigvals).cwiseAbs().sum();
    CHECK(r.probability == doctest::Approx(target.squaredNorm() / (lsum * lsum)).epsilon(1e-9));
  }
}

TEST_CASE("zero post-selection probability is reported") {
  GivensCircuit c;
  c.num_qubits = 2;
  c.ancilla = 1;
  c.gates = {GivensGate{GateKind::X, {1}, 0.0}};
  VecC in = VecC::Zero(4);
  in[0] = 1.0;
  CHECK_THROWS(simulate_circuit(c, in, 0));
}

TEST_CASE("stored counts match a recount and reports are well formed") {
  std::mt19937_64 rng(3);
  MatC u = oracle::random_unitary(4, rng);
  VecR ev = VecR::LinSpaced(4, -1.0, 2.0);
  auto c = assemble_packet_circuit(ev, u);
  auto recount = count_resources(c);
  CHECK(recount.cnot_total == c.counts.cnot_total);
  CHECK(recount.cnot_depth == c.counts.cnot_depth);
  CHECK(recount.hadamard_test_cnot == 2);
  CHECK(recount.blocks[Block::V].cnot == 2 * 4 * 3);
  CHECK(recount.blocks[Block::OaFirst].cnot == 4 * 3);
  CHECK(recount.blocks[Block::OaSecond].cnot == 4 * 3);
  std::ostringstream os;
  write_gates(os, c.gates);
  std::istringstream is(os.str());
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    CHECK(line.rfind("GATE ", 0) == 0);
    ++n;
  }
  CHECK(n == static_cast<int>(c.gates.size()));
  auto j = nlohmann::json::parse(resource_report_json(c, 4));
  CHECK(j.contains("cnot_total"));
}
