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

#include "z2meson/scattering.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "z2meson/io.hpp"
#include "z2meson/kernels.hpp"
#include "z2meson/wavepacket.hpp"

namespace z2m {

ScatterConfig ScatterConfig::resolved() const {
  ScatterConfig c = *this;
  c.model.validate();
  const int L = c.model.L;
  if (c.sigma_k <= 0) c.sigma_k = 2.0 * std::numbers::pi / L;
  if (c.x1 < 0) c.x1 = (L - 1) / 2.0 - L / 4.0;
  if (c.x2 < 0) c.x2 = (L - 1) / 2.0 + L / 4.0;
  if (c.x1 >= L) throw std::invalid_argument("x1: must lie in [0, L)");
  if (c.x2 >= L) throw std::invalid_argument("x2: must lie in [0, L)");
  if (!(c.dt > 0)) throw std::invalid_argument("dt: must be positive");
  if (c.t_final < 0) throw std::invalid_argument("t_final: must be non-negative");
  if (c.measure_every < 1) throw std::invalid_argument("measure_every: must be >= 1");
  if (std::abs(c.kbar) > L / 2) throw std::invalid_argument("kbar: outside the momentum grid");
  return c;
}

Trajectory run_scattering(const ScatterConfig& in) {
  Trajectory tr;
  tr.config = in.resolved();
  const ScatterConfig& c = tr.config;
  const ModelParams& p = c.model;
  const int L = p.L;

  const Basis basis = Basis::sector(L);
  const SparseOperator H = build_hamiltonian(p, basis);
  const SparseOperator C = build_charge_conjugation(p, basis);
  const EigenSolution gs = ground_state(H, c.lanczos);
  const VecC& vac = gs.vectors[0];
  tr.vacuum_energy = gs.energies[0];

  const QseMatrices mats = build_qse_matrices(vac, basis, H, C);
  const QseResult qse = solve_qse(mats, c.qse);
  WavePacketSpec s1{c.kbar, c.x1, c.sigma_k, qse.lambda_star()};
  WavePacketSpec s2{-c.kbar, c.x2, c.sigma_k, qse.lambda_star()};
  VecC psi = initial_state(s1, s2, qse, vac, basis);

  const ObservableContext ctx = make_context(p, basis, vac, qse, mats);
  tr.vacuum_P = string_probability(vac, mats);
  tr.excitation_energy = ctx.H.total.expectation(psi).real() - tr.vacuum_energy;

  const TrotterPlan plan = make_trotter_plan(p, basis, c.dt, c.t_final);
  const int steps = static_cast<int>(std::llround(c.t_final / c.dt));
  VecC exact = psi;
  for (int s = 0; s <= steps; ++s) {
    if (s % c.measure_every == 0 || s == steps) {
      const double t = s * c.dt;
      tr.rows.push_back(measure_all(psi, t, ctx, true));
      if (c.exact_check) {
        if (s > 0) {
          const double since = t - (tr.rows.size() >= 2 ? tr.rows[tr.rows.size() - 2].t : 0.0);
          exact = exact_evolve(exact, H, since);
        }
        tr.exact_deviation.push_back((psi - exact).norm());
      }
    }
    if (s < steps) trotter_step(psi, plan);
  }
  const Measurement first = tr.rows.front();
  tr.e_kin0 = first.dE_kin;
  tr.e_mass0 = first.dE_mass;
  tr.e_el0 = first.dE_el;
  for (auto& r : tr.rows) {
    r.dE_kin -= first.dE_kin;
    r.dE_mass -= first.dE_mass;
    r.dE_el -= first.dE_el;
  }
  return tr;
}

std::vector<std::string> write_trajectory(const std::string& dir, const Trajectory& tr) {
  std::filesystem::create_directories(dir);
  const int L = tr.config.model.L;
  std::vector<std::string> names;
  auto open = [&](const std::string& name) {
    names.push_back(name);
    std::ofstream f(std::filesystem::path(dir) / name);
    if (!f) throw std::runtime_error("cannot write " + name);
    return f;
  };
  {
    auto f = open("density.csv");
    f << "t,n,dchi,dx\n";
    for (const auto& r : tr.rows) {
      for (int n = 1; n <= L; ++n) {
        f << fmt(r.t) << ',' << n << ',' << fmt(r.dchi[n - 1]) << ',' << fmt(r.dx[n - 1]) << '\n';
      }
    }
  }
  {
    auto f = open("energy.csv");
    f << "t,dE_kin,dE_mass,dE_el,energy\n";
    for (const auto& r : tr.rows) {
      f << fmt(r.t) << ',' << fmt(r.dE_kin) << ',' << fmt(r.dE_mass) << ',' << fmt(r.dE_el) << ','
        << fmt(r.energy) << '\n';
    }
  }
  {
    auto f = open("mesons.csv");
    f << "t,rho_vector,rho_scalar\n";
    for (const auto& r : tr.rows) {
      f << fmt(r.t) << ',' << fmt(r.rho_vector) << ',' << fmt(r.rho_scalar) << '\n';
    }
  }
  {
    auto f = open("strings.csv");
    f << "t,l,P\n";
    for (const auto& r : tr.rows) {
      for (Eigen::Index l = 0; l < r.P.size(); ++l) {
        f << fmt(r.t) << ',' << l + 1 << ',' << fmt(r.P[l]) << '\n';
      }
    }
  }
  {
    auto f = open("entropy.csv");
    f << "t,dS\n";
    for (const auto& r : tr.rows) f << fmt(r.t) << ',' << fmt(r.dS) << '\n';
  }
  {
    auto f = open("diagnostics.csv");
    f << "t,norm,gauss_residual,exact_deviation\n";
    for (std::size_t i = 0; i < tr.rows.size(); ++i) {
      const auto& r = tr.rows[i];
      f << fmt(r.t) << ',' << fmt(r.norm) << ',' << fmt(r.gauss_residual) << ','
        << (i < tr.exact_deviation.size() ? fmt(tr.exact_deviation[i]) : std::string("nan")) << '\n';
    }
  }
  return names;
}

}  // namespace z2m
