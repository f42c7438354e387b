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

#include <vector>

#include "z2meson/lattice.hpp"

namespace z2m {

// exp(-i H_n delta) for one local term, stored as 1x1 phases and 2x2 blocks
// over basis indices. Every local term couples a state to at most one
// partner, so this is exact.
struct LocalPropagator {
  std::vector<std::int64_t> single_idx;
  std::vector<cplx> single_phase;
  std::vector<std::int64_t> pair_i, pair_j;
  std::vector<Eigen::Matrix2cd> pair_u;
  void apply(VecC& psi) const;
};

LocalPropagator exponentiate_local(const SparseOperator& Hn, double delta);

struct TrotterPlan {
  double dt = 0.1;
  double t_final = 0.0;
  std::vector<int> odd_sites, even_sites;
  std::vector<SparseOperator> terms;  // H_n, index n-1
  std::vector<LocalPropagator> odd_half, even_full;
};

TrotterPlan make_trotter_plan(const ModelParams& p, const Basis& basis, double dt,
                              double t_final);
// exp(-i H_odd dt/2) exp(-i H_even dt) exp(-i H_odd dt/2).
void trotter_step(VecC& psi, const TrotterPlan& plan);

struct KrylovOptions {
  double tol = 1e-9;
  int krylov_dim = 30;
  double min_step = 1e-12;
};
// exp(-i H t) psi with an adaptive Lanczos propagator.
VecC exact_evolve(const VecC& psi, const SparseOperator& H, double t,
                  const KrylovOptions& opt = {});

}  // namespace z2m
