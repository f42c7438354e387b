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

#include "z2meson/dynamics.hpp"
#include "z2meson/observables.hpp"
#include "z2meson/qse.hpp"
#include "z2meson/spectrum.hpp"

namespace z2m {

struct ScatterConfig {
  ModelParams model;
  int kbar = 1;               // packet 1 at +kbar, packet 2 at -kbar
  double sigma_k = 0.0;       // <= 0 selects 2 pi / L
  double x1 = -1.0, x2 = -1.0;  // < 0 selects the centres of the two halves
  double dt = 0.1;
  double t_final = 10.0;
  int measure_every = 4;
  bool exact_check = false;
  QseOptions qse;
  LanczosOptions lanczos;

  // Fills the defaults that depend on L and validates. Throws
  // std::invalid_argument naming the offending field.
  ScatterConfig resolved() const;
};

struct Trajectory {
  ScatterConfig config;  // resolved
  double vacuum_energy = 0;
  double excitation_energy = 0;  // <H>(0) - E_0
  // Energy parts at t = 0 relative to the vacuum.
  double e_kin0 = 0, e_mass0 = 0, e_el0 = 0;
  // Rows with dE_* taken relative to t = 0.
  std::vector<Measurement> rows;
  // ||psi_trotter - psi_exact|| at each row, when exact_check is set.
  std::vector<double> exact_deviation;
  VecR vacuum_P;  // P_l baseline
};

Trajectory run_scattering(const ScatterConfig& cfg);

// One CSV per observable family in dir (created if needed). Returns the
// file names written.
std::vector<std::string> write_trajectory(const std::string& dir, const Trajectory& tr);

}  // namespace z2m
