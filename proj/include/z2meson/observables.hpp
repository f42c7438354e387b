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

#include <string>
#include <vector>

#include "z2meson/lattice.hpp"
#include "z2meson/qse.hpp"

namespace z2m {

// Everything needed to evaluate the scattering observables on one model.
struct ObservableContext {
  ModelParams params;
  Basis basis;
  HamiltonianParts H;
  VecC vacuum;
  const QseResult* qse = nullptr;
  const QseMatrices* mats = nullptr;
  std::vector<SparseOperator> b_vector;  // b_{k,-1}, one per accepted vector k
  std::vector<SparseOperator> b_scalar;  // b_{k,+1}
  std::vector<SparseOperator> gauss;
  // Vacuum baselines.
  VecR chi0, x0;
  double e_kin0 = 0, e_mass0 = 0, e_el0 = 0;
  double entropy0 = 0;
};

ObservableContext make_context(const ModelParams& p, const Basis& basis, const VecC& vacuum,
                               const QseResult& qse, const QseMatrices& mats);

// Annihilator b_{k,c} = sum_I conj(a_I) M_I^dag.
SparseOperator meson_annihilator(const MesonSolution& s, const Basis& basis);

VecR chi_density(const VecC& psi, const Basis& basis);
VecR electric_field(const VecC& psi, const Basis& basis);
double meson_number(const VecC& psi, const std::vector<SparseOperator>& b);
// Raw P_l for l = 1..L/2 (index l-1).
VecR string_probability(const VecC& psi, const QseMatrices& mats);
// von Neumann entropy (log2) of sites 1..L/2 with their links.
double half_chain_entropy(const VecC& psi, const Basis& basis);
// max_n |<G_n> - 1|.
double gauss_residual(const VecC& psi, const std::vector<SparseOperator>& gauss);

struct Measurement {
  double t = 0;
  VecR dchi, dx;
  double dE_kin = 0, dE_mass = 0, dE_el = 0;
  double energy = 0;
  double rho_vector = 0, rho_scalar = 0;
  VecR P;
  double dS = 0;
  double norm = 0;
  double gauss_residual = 0;
};

// dE_* are relative to the vacuum here; the trajectory subtracts t = 0.
Measurement measure_all(const VecC& psi, double t, const ObservableContext& ctx,
                        bool with_rho = true);

}  // namespace z2m
