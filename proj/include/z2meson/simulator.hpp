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

#include <optional>

#include "z2meson/circuits.hpp"
#include "z2meson/lattice.hpp"

namespace z2m {

// Local unitary of a gate; bit j of the local index is qubits[j].
MatC gate_matrix(const GivensGate& g);
void apply_gate(VecC& psi, const GivensGate& g);

struct SimResult {
  VecC state;  // ancilla removed when post-selected
  double probability = 1.0;
};

// Runs the circuit on a 2^{num_qubits} state. With postselect, the ancilla
// (highest qubit) is projected on that value and dropped.
SimResult simulate_circuit(const GivensCircuit& c, const VecC& input,
                           std::optional<int> postselect = std::nullopt, bool expanded = true);

// Dense unitary of a circuit (small registers only).
MatC circuit_unitary(const GivensCircuit& c, bool expanded = true);

// Hadamard on every link qubit: maps the library's X-basis link labels to
// the computational basis used by circuits, and back.
VecC convert_links(const VecC& full, int L);
MatC convert_links(const MatC& full, int L);

// Sector state -> circuit register (links converted, optional ancilla |0>).
VecC sector_to_register(const VecC& psi, const Basis& sector, bool with_ancilla);
// Register without ancilla -> sector amplitudes; leakage receives the
// weight outside the sector.
VecC register_to_sector(const VecC& reg, const Basis& sector, double* leakage = nullptr);

}  // namespace z2m
