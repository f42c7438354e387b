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

#include <cstdint>
#include <vector>

#include "z2meson/sparse.hpp"
#include "z2meson/types.hpp"

namespace z2m {

struct EigenSolution {
  std::vector<double> energies;   // ascending
  std::vector<VecC> vectors;      // orthonormal
  std::vector<double> residuals;  // ||H v - E v||
};

struct LanczosOptions {
  double tol = 1e-10;
  int krylov_dim = 60;
  int max_restarts = 200;
  std::uint64_t seed = 12345;
  // Energies closer than this form one multiplet for C disambiguation.
  double degeneracy_tol = 1e-8;
};

// Lowest k eigenpairs by restarted Lanczos with full reorthogonalization,
// computing one pair per run and deflating against the locked ones.
// Throws std::runtime_error carrying the best residual on non-convergence.
EigenSolution lowest_k(const SparseOperator& H, int k, const LanczosOptions& opt = {});
EigenSolution ground_state(const SparseOperator& H, const LanczosOptions& opt = {});

// Rotates each degenerate multiplet of sol onto eigenvectors of the unitary C.
void disambiguate_with(const SparseOperator& C, EigenSolution& sol, double degeneracy_tol);

// Dense self-adjoint oracle (all eigenpairs).
EigenSolution dense_spectrum(const SparseOperator& H);

}  // namespace z2m
