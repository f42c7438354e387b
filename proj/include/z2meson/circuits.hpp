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

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "z2meson/types.hpp"

namespace z2m {

struct PacketOperator;

// Circuit qubits: f_n = 2(n-1), g_n = 2(n-1)+1 (computational Z basis on
// links), optional ancilla at 2L.
//
// Rotation gates act as exp(-i angle S swap) on qubits (a, b), where swap
// exchanges |01> and |10> and S is the product of Z over qubits[2..].
// For an elementary rotation exp(theta (c_a^dag c_b - c_b^dag c_a)) between
// neighbouring modes the angle is theta times the sign of S.
enum class GateKind {
  MatterRotation,   // qubits f_a, f_b, g_a
  GaugeRotation,    // qubits g_a, g_b
  DressedRotation,  // qubits g_a, g_b, then matter qubits of P_a P_b
  Phase,            // diag(1, e^{i angle})
  CX,               // control, target
  H,
  X,
  Rx,
  Ry,
  Rz,
};

enum class Block { V, VDag, OaFirst, Ob, OaSecond, HadamardTest, Other };

struct GivensGate {
  GateKind kind;
  std::vector<int> qubits;
  double angle = 0.0;
  int layer = 0;
  Block block = Block::Other;
};

struct BlockCounts {
  int cnot = 0;
  int depth = 0;  // sum over layers of the deepest gate
  int rotations = 0;
};

struct CircuitCounts {
  int cnot_total = 0;
  int cnot_depth = 0;  // layered, Hadamard-test extras excluded
  int asap_depth = 0;  // greedy CNOT depth of the expanded circuit, all gates
  int rotation_count = 0;
  int hadamard_test_cnot = 0;
  std::map<Block, BlockCounts> blocks;
};

struct GivensCircuit {
  int num_qubits = 0;
  int ancilla = -1;
  int num_layers = 0;
  std::vector<GivensGate> gates;
  CircuitCounts counts;

  // Appends with layers shifted past the current ones.
  void append(const GivensCircuit& other, Block block);
  GivensCircuit adjoint() const;
};

// Elementary factor of a mode-space unitary: a real rotation
// [[cos, sin], [-sin, cos]] on modes (mode, mode+1) or a phase on one mode.
struct ModeOp {
  bool rotation;
  int mode;  // 1-based
  double angle;
  int layer;
};

// u = E_1 E_2 ... E_K (phases of the final diagonal included).
std::vector<ModeOp> givens_qr(const MatC& u, double tol = 1e-13);
// w = E_1 ... E_K e_1 for a normalized column w.
std::vector<ModeOp> givens_first_column(const VecC& w, double tol = 1e-13);
MatC mode_matrix(const std::vector<ModeOp>& ops, int L);

enum class Flavor { Matter, Gauge, Dressed };
enum class Columns { All, First };

// Z-string supports (sites) of P_1..P_L for the dressed flavor.
using PauliZStrings = std::vector<std::vector<int>>;
// P_1 = I, P_n = sigma^z_{n-1}.
PauliZStrings default_pauli_strings(int L);

// V(u) on the given flavor. Dressed needs the strings.
GivensCircuit decompose_V(const MatC& u, Flavor flavor, Columns columns,
                          const PauliZStrings& strings = {});

// O_a / O_b as V X_{g,1} V^dag, normalized to be unitary.
GivensCircuit build_Oa(const VecR& lambdas);
GivensCircuit build_Ob(const VecR& lambdas, const PauliZStrings& strings);
// Normalization sqrt(sum |lambda| / 2) dividing O_a and O_b.
double o_norm(const VecR& lambdas);

// Weights lambda' of O_D = sum_r lambda_r n_r = sum_n lambda'_n P_n on the
// half-filled sector, for the default strings.
VecR diagonal_weights(const VecR& eigvals);

GivensCircuit assemble_packet_circuit(const VecR& eigvals, const MatC& u);
GivensCircuit assemble_packet_circuit(const PacketOperator& packet);

// CNOT-level expansion of one gate and of a whole circuit.
std::vector<GivensGate> expand_gate(const GivensGate& g);
std::vector<GivensGate> expand(const GivensCircuit& c);
CircuitCounts count_resources(const GivensCircuit& c);

struct ResourceFormulas {
  int v, oa, ob, total, v_depth, oa_depth, ob_depth, total_depth;
};
ResourceFormulas resource_formulas(int L);

std::string kind_name(GateKind k);
std::string block_name(Block b);
// One "GATE kind q0 [q1 ...] angle" line per gate.
void write_gates(std::ostream& os, const std::vector<GivensGate>& gates);
std::string resource_report_json(const GivensCircuit& c, int L);

}  // namespace z2m
