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

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "z2meson/lattice.hpp"
#include "z2meson/spectrum.hpp"

namespace z2m {

// Multi-index I = (n, l) laid out as (n-1)*L + (l-1).
inline int pair_index(int n, int l, int L) { return (n - 1) * L + (l - 1); }
inline std::pair<int, int> pair_sites(int I, int L) { return {I / L + 1, I % L + 1}; }

struct QseMatrices {
  int L = 0;
  MatC H, C, S, Z;
  double vacuum_energy = 0.0;  // <Omega|H|Omega>
  // Column I holds M_I |Omega>.
  MatC vectors;
};

QseMatrices build_qse_matrices(const VecC& ground, const Basis& basis,
                               const SparseOperator& H, const SparseOperator& C);

enum class LabelRule {
  // Lowest accepted solution in each C-eigenvalue class is the vector meson
  // (c = -1); the rest are scalar-like (c = +1).
  VectorBranch,
  // c = sign Re <C>, k from the remaining phase.
  HalfZone,
};

struct QseOptions {
  double s_cut = 1e-6;  // relative to the largest Gram eigenvalue
  double c_tol = 0.05;
  double z_tol = 0.05;
  // Accept only solutions whose excitation energy lies below twice the lowest
  // accepted one, i.e. below the two-particle continuum.
  bool stable_window = true;
  LabelRule rule = LabelRule::VectorBranch;
};

struct MesonSolution {
  VecC coeffs;   // S-normalized, phase fixed so a_(2,1) is real positive
  double E = 0;  // absolute energy a^dag H a
  cplx cek;      // a^dag C a
  double NZ = 0; // a^dag Z a
  cplx lambda;   // reduced eigenvalue
  double residual = 0;
  bool accepted = false;
  int k_int = 0;
  int c = 0;
  std::optional<double> fidelity;
};

struct QseResult {
  int L = 0;
  int kept_modes = 0;
  // Accepted solutions first, each group ranked by E + NZ.
  std::vector<MesonSolution> solutions;

  std::vector<const MesonSolution*> accepted(int c) const;
  // Vector (c = -1) momenta in ascending order.
  std::vector<int> lambda_star() const;
  const MesonSolution* vector_meson(int k) const;
};

QseResult solve_qse(const QseMatrices& mats, const QseOptions& opt = {});

// Ritz values of H a = lambda S a alone (no C or Z terms), ascending.
std::vector<double> ritz_values(const QseMatrices& mats, double s_cut);

// State b^dag |Omega> = sum_I a_I M_I |Omega>.
VecC meson_state(const QseMatrices& mats, const VecC& coeffs);

// Best overlap with the supplied exact eigenvectors.
double best_fidelity(const VecC& psi, const EigenSolution& exact);

int wrap_momentum(int k, int L);

// Accepted solution against the exact spectrum; energies are excitation
// energies above E0.
struct BenchRow {
  int k_int = 0;
  int c = 0;
  double E_qse = 0;
  double E_exact = 0;
  double fidelity = 0;
  double NZ = 0;
};
// exact should be C-disambiguated so degenerate +-k pairs are separated.
std::vector<BenchRow> benchmark_qse(const QseResult& qse, const QseMatrices& mats,
                                    const EigenSolution& exact, double E0);

// CSV body "n,l,re,im" and a JSON header object for one solution.
void write_solution_csv(std::ostream& os, const MesonSolution& s, int L);
std::string solution_header_json(const MesonSolution& s);

}  // namespace z2m
