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

#include "z2meson/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace z2m {

namespace {

MatC rot1(char axis, double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  MatC m(2, 2);
  switch (axis) {
    case 'x': m << c, cplx(0, -s), cplx(0, -s), c; break;
    case 'y': m << c, -s, s, c; break;
    default: m << std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2); break;
  }
  return m;
}

// exp(-i angle S swap) on qubits (0, 1), S = Z on all others.
MatC rotation_matrix(int nq, double angle) {
  const int d = 1 << nq;
  MatC m = MatC::Identity(d, d);
  for (int i = 0; i < d; ++i) {
    if (((i & 1) != 0) || ((i & 2) == 0)) continue;  // i has bits 0:0, 1:1
    const int j = i ^ 3;
    int parity = 0;
    for (int q = 2; q < nq; ++q) parity ^= (i >> q) & 1;
    const double s = parity ? -1.0 : 1.0;
    const cplx off(0.0, -s * std::sin(angle));
    m(i, i) = m(j, j) = std::cos(angle);
    m(i, j) = m(j, i) = off;
  }
  return m;
}

}  // namespace

MatC gate_matrix(const GivensGate& g) {
  MatC m;
  switch (g.kind) {
    case GateKind::MatterRotation:
    case GateKind::GaugeRotation:
    case GateKind::DressedRotation:
      return rotation_matrix(static_cast<int>(g.qubits.size()), g.angle);
    case GateKind::Phase:
      m = MatC::Identity(2, 2);
      m(1, 1) = std::polar(1.0, g.angle);
      return m;
    case GateKind::CX:
      // local bit 0 = control, bit 1 = target
      m = MatC::Zero(4, 4);
      m(0, 0) = m(2, 2) = 1;
      m(3, 1) = m(1, 3) = 1;
      return m;
    case GateKind::H:
      m.resize(2, 2);
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    case GateKind::X:
      m.resize(2, 2);
      m << 0, 1, 1, 0;
      return m;
    case GateKind::Rx: return rot1('x', g.angle);
    case GateKind::Ry: return rot1('y', g.angle);
    case GateKind::Rz: return rot1('z', g.angle);
  }
  throw std::logic_error("gate_matrix: unknown kind");
}

void apply_gate(VecC& psi, const GivensGate& g) {
  const MatC m = gate_matrix(g);
  const int k = static_cast<int>(g.qubits.size());
  const int d = 1 << k;
  std::uint64_t mask = 0;
  std::vector<std::uint64_t> offs(static_cast<std::size_t>(d), 0);
  for (int j = 0; j < k; ++j) mask |= std::uint64_t{1} << g.qubits[j];
  for (int a = 0; a < d; ++a) {
    for (int j = 0; j < k; ++j) {
      if ((a >> j) & 1) offs[a] |= std::uint64_t{1} << g.qubits[j];
    }
  }
  const auto n = static_cast<std::uint64_t>(psi.size());
  std::vector<cplx> in(static_cast<std::size_t>(d)), out(static_cast<std::size_t>(d));
  for (std::uint64_t base = 0; base < n; ++base) {
    if (base & mask) continue;
    for (int a = 0; a < d; ++a) in[a] = psi[static_cast<Eigen::Index>(base | offs[a])];
    for (int r = 0; r < d; ++r) {
      cplx s = 0;
      for (int a = 0; a < d; ++a) s += m(r, a) * in[a];
      out[r] = s;
    }
    for (int a = 0; a < d; ++a) psi[static_cast<Eigen::Index>(base | offs[a])] = out[a];
  }
}

SimResult simulate_circuit(const GivensCircuit& c, const VecC& input, std::optional<int> postselect,
                           bool expanded) {
  if (input.size() != (Eigen::Index{1} << c.num_qubits)) {
    throw std::invalid_argument("simulate_circuit: state size does not match the register");
  }
  SimResult r;
  r.state = input;
  for (const auto& g : expanded ? expand(c) : c.gates) apply_gate(r.state, g);
  if (!postselect) return r;
  if (c.ancilla != c.num_qubits - 1) throw std::invalid_argument("simulate_circuit: ancilla must be the top qubit");
  const Eigen::Index half = Eigen::Index{1} << (c.num_qubits - 1);
  VecC kept = r.state.segment(*postselect ? half : 0, half);
  const double p = kept.squaredNorm() / r.state.squaredNorm();
  if (p < 1e-14) throw std::runtime_error("simulate_circuit: post-selection probability vanishes");
  r.probability = p;
  r.state = kept / kept.norm();
  return r;
}

MatC circuit_unitary(const GivensCircuit& c, bool expanded) {
  const Eigen::Index d = Eigen::Index{1} << c.num_qubits;
  MatC U = MatC::Identity(d, d);
  const auto gates = expanded ? expand(c) : c.gates;
  for (Eigen::Index j = 0; j < d; ++j) {
    VecC col = U.col(j);
    for (const auto& g : gates) apply_gate(col, g);
    U.col(j) = col;
  }
  return U;
}

VecC convert_links(const VecC& full, int L) {
  VecC v = full;
  for (int n = 1; n <= L; ++n) apply_gate(v, GivensGate{GateKind::H, {QubitLayout::link(n)}});
  return v;
}

MatC convert_links(const MatC& full, int L) {
  MatC m = full;
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = convert_links(VecC(m.col(j)), L);
  MatC t = m.adjoint();
  for (Eigen::Index j = 0; j < t.cols(); ++j) t.col(j) = convert_links(VecC(t.col(j)), L);
  return t.adjoint();
}

VecC sector_to_register(const VecC& psi, const Basis& sector, bool with_ancilla) {
  const int L = sector.L();
  const Eigen::Index d = Eigen::Index{1} << (2 * L);
  VecC full = VecC::Zero(d);
  for (std::int64_t i = 0; i < sector.dim(); ++i) full[static_cast<Eigen::Index>(sector.state(i))] = psi[i];
  full = convert_links(full, L);
  if (!with_ancilla) return full;
  VecC reg = VecC::Zero(2 * d);
  reg.head(d) = full;
  return reg;
}

VecC register_to_sector(const VecC& reg, const Basis& sector, double* leakage) {
  const int L = sector.L();
  const VecC full = convert_links(reg, L);
  VecC out(sector.dim());
  for (std::int64_t i = 0; i < sector.dim(); ++i) out[i] = full[static_cast<Eigen::Index>(sector.state(i))];
  if (leakage) *leakage = std::max(0.0, full.squaredNorm() - out.squaredNorm());
  return out;
}

}  // namespace z2m
