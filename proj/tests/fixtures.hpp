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

// Shared model fixtures at m = 0.1, eps = 1.0, built once per L.
#pragma once

#include <map>
#include <memory>

#include "z2meson/lattice.hpp"
#include "z2meson/qse.hpp"
#include "z2meson/spectrum.hpp"

namespace fixture {

struct Setup {
  z2m::ModelParams p;
  z2m::Basis basis;
  z2m::SparseOperator H, C;
  z2m::EigenSolution gs;
  z2m::QseMatrices mats;
  z2m::QseResult qse;
  const z2m::VecC& omega() const { return gs.vectors[0]; }
};

inline const Setup& setup(int L) {
  static std::map<int, std::unique_ptr<Setup>> cache;
  auto& slot = cache[L];
  if (!slot) {
    auto s = std::make_unique<Setup>();
    s->p = {L, 0.1, 1.0};
    s->basis = z2m::Basis::sector(L);
    s->H = z2m::build_hamiltonian(s->p, s->basis);
    s->C = z2m::build_charge_conjugation(s->p, s->basis);
    s->gs = z2m::ground_state(s->H);
    s->mats = z2m::build_qse_matrices(s->omega(), s->basis, s->H, s->C);
    s->qse = z2m::solve_qse(s->mats);
    slot = std::move(s);
  }
  return *slot;
}

}  // namespace fixture
