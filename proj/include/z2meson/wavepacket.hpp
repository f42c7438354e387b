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
#include <vector>

#include "z2meson/lattice.hpp"
#include "z2meson/qse.hpp"

namespace z2m {

struct WavePacketSpec {
  int kbar = 0;          // units of 2 pi / L
  double xbar = 0.0;     // site coordinate, site n sits at x = n - 1
  double sigma_k = 1.0;  // momentum width
  std::vector<int> lambda_star;
  void validate() const;
};

// phi(k) = N exp(-i k (xbar - 1/2)) exp(-(k - kbar)^2 / (4 sigma^2)), k = 2 pi j / L,
// with k - kbar taken as the shortest distance on the Brillouin circle. The
// 1/2 offsets the centre of the pair fixing the phase of a^(k).
std::map<int, cplx> gaussian_profile(const WavePacketSpec& spec, int L);

// Position amplitudes sum_k phi(k) e^{ikx} / sqrt(L) at x = 0..L-1.
VecC position_profile(const WavePacketSpec& spec, int L);
// Circular mean and spread of |f(x)|^2 on the ring, in sites.
struct RingMoments {
  double mean;
  double width;
};
RingMoments ring_moments(const VecR& weights);

struct PacketOperator {
  MatC Mb;     // B^dag coefficients sum_k phi(k) a^(k)
  MatC Mcoef;  // Hermitian A coefficients (Mb + Mb^dag) / 2
  VecR eigvals;
  MatC u;      // Mcoef = u diag(eigvals) u^dag
  SparseOperator B_dag;
  SparseOperator A;         // shortest-path Wilson lines
  SparseOperator A_direct;  // Wilson lines cut at link L (circuit target)
};

PacketOperator build_packet_operator(const WavePacketSpec& spec, const QseResult& qse,
                                     const Basis& basis);

// Normalized B1^dag B2^dag |Omega>. Throws on a vanishing product.
VecC initial_state(const WavePacketSpec& s1, const WavePacketSpec& s2, const QseResult& qse,
                   const VecC& ground, const Basis& basis);

// Sum_{nl} coef_{nl} M_{nl} with the given dressing.
std::vector<Term> bilinear_terms(const MatC& coef, bool shortest_path);

}  // namespace z2m
