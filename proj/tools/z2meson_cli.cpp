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

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "z2meson/circuits.hpp"
#include "z2meson/config.hpp"
#include "z2meson/io.hpp"
#include "z2meson/kernels.hpp"
#include "z2meson/qse.hpp"
#include "z2meson/simulator.hpp"
#include "z2meson/spectrum.hpp"
#include "z2meson/wavepacket.hpp"

namespace fs = std::filesystem;
using namespace z2m;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Outcome {
  std::vector<std::string> files;
  std::vector<std::string> failures;  // --check violations
  ojson summary = ojson::object();
};

std::ofstream open_out(const ExperimentConfig& c, Outcome& o, const std::string& name) {
  o.files.push_back(name);
  std::ofstream f(fs::path(c.out) / name);
  if (!f) throw std::runtime_error("cannot write " + name);
  return f;
}

void check(Outcome& o, bool ok, const std::string& what) {
  if (!ok) o.failures.push_back(what);
}

struct Model {
  Basis basis;
  SparseOperator H, C;
  VecC vacuum;
  double E0;
};

Model model_for(const ExperimentConfig& c) {
  Model m{Basis::sector(c.model.L), {}, {}, {}, 0.0};
  m.H = build_hamiltonian(c.model, m.basis);
  m.C = build_charge_conjugation(c.model, m.basis);
  LanczosOptions lo;
  lo.seed = c.seed;
  const auto gs = ground_state(m.H, lo);
  m.vacuum = gs.vectors[0];
  m.E0 = gs.energies[0];
  return m;
}

EigenSolution exact_levels(const Model& m, int levels, std::uint64_t seed) {
  LanczosOptions lo;
  lo.seed = seed;
  const int k = static_cast<int>(std::min<std::int64_t>(levels, m.basis.dim()));
  EigenSolution sol = lowest_k(m.H, k, lo);
  disambiguate_with(m.C, sol, lo.degeneracy_tol * 100);
  return sol;
}

Outcome run_spectrum(const ExperimentConfig& c) {
  Outcome o;
  const Model m = model_for(c);
  const EigenSolution sol = exact_levels(m, c.levels, c.seed);
  auto f = open_out(c, o, "spectrum.csv");
  f << "index,energy,excitation,residual,c_re,c_im\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.energies.size(); ++i) {
    const cplx ce = m.C.expectation(sol.vectors[i]);
    f << i << ',' << fmt(sol.energies[i]) << ',' << fmt(sol.energies[i] - m.E0) << ','
      << fmt(sol.residuals[i]) << ',' << fmt(ce.real()) << ',' << fmt(ce.imag()) << '\n';
    worst = std::max(worst, sol.residuals[i]);
  }
  o.summary["sector_dim"] = m.basis.dim();
  o.summary["ground_energy"] = m.E0;
  o.summary["max_residual"] = worst;
  check(o, worst < 1e-8, "eigen residual above 1e-8");
  return o;
}

Outcome run_qse_bench(const ExperimentConfig& c) {
  Outcome o;
  const Model m = model_for(c);
  const QseMatrices mats = build_qse_matrices(m.vacuum, m.basis, m.H, m.C);
  const QseResult qse = solve_qse(mats, c.scatter.qse);
  const EigenSolution exact = exact_levels(m, c.levels, c.seed);
  const auto rows = benchmark_qse(qse, mats, exact, m.E0);
  auto f = open_out(c, o, "qse.csv");
  f << "k_int,c,E_qse,E_exact,infidelity,NZ\n";
  for (const auto& r : rows) {
    f << r.k_int << ',' << r.c << ',' << fmt(r.E_qse) << ',' << fmt(r.E_exact) << ','
      << fmt(1.0 - r.fidelity) << ',' << fmt(r.NZ) << '\n';
    if (r.c == -1) {
      const std::string tag = " (k=" + std::to_string(r.k_int) + ")";
      check(o, std::abs(r.E_qse - r.E_exact) < 1e-2 * std::abs(r.E_exact), "energy error" + tag);
      check(o, r.fidelity >= 0.99, "fidelity" + tag);
      check(o, r.NZ < 0.01, "N_Z" + tag);
    }
  }
  o.summary["kept_modes"] = qse.kept_modes;
  o.summary["accepted"] = rows.size();
  o.summary["lambda_star"] = qse.lambda_star();
  return o;
}

Outcome run_scatter(const ExperimentConfig& c) {
  Outcome o;
  const Trajectory tr = run_scattering(c.scatter);
  o.files = write_trajectory(c.out, tr);
  double norm_dev = 0, gauss = 0, drift = 0;
  for (const auto& r : tr.rows) {
    norm_dev = std::max(norm_dev, std::abs(r.norm - 1.0));
    gauss = std::max(gauss, r.gauss_residual);
    drift = std::max({drift, std::abs(r.dE_kin), std::abs(r.dE_mass), std::abs(r.dE_el)});
  }
  const auto& s = tr.config;
  o.summary["x1"] = s.x1;
  o.summary["x2"] = s.x2;
  o.summary["sigma_k"] = s.sigma_k;
  o.summary["excitation_energy"] = tr.excitation_energy;
  o.summary["rho_vector_0"] = tr.rows.front().rho_vector;
  o.summary["max_energy_part_drift"] = drift;
  check(o, norm_dev < 1e-8, "norm drift above 1e-8");
  check(o, gauss < 1e-8, "Gauss-law residual above 1e-8");
  check(o, drift <= 0.1 * tr.excitation_energy, "energy-part drift above 10% of the excitation");
  return o;
}

Outcome run_circuit(const ExperimentConfig& c) {
  Outcome o;
  const int L = c.model.L;
  const Model m = model_for(c);
  const QseMatrices mats = build_qse_matrices(m.vacuum, m.basis, m.H, m.C);
  const QseResult qse = solve_qse(mats, c.scatter.qse);
  WavePacketSpec spec;
  spec.kbar = c.packet_kbar;
  spec.xbar = c.packet_xbar < 0 ? (L - 1) / 2.0 : c.packet_xbar;
  spec.sigma_k = c.packet_sigma > 0 ? c.packet_sigma : 2.0 * std::numbers::pi / L;
  spec.lambda_star = qse.lambda_star();
  const PacketOperator packet = build_packet_operator(spec, qse, m.basis);
  const GivensCircuit circ = assemble_packet_circuit(packet);
  {
    auto f = open_out(c, o, "gates.txt");
    write_gates(f, circ.gates);
  }
  {
    auto f = open_out(c, o, "gates_expanded.txt");
    write_gates(f, expand(circ));
  }
  {
    auto f = open_out(c, o, "resources.json");
    f << resource_report_json(circ, L) << '\n';
  }
  const ResourceFormulas t = resource_formulas(L);
  const auto& k = circ.counts;
  o.summary["cnot_total"] = k.cnot_total;
  o.summary["cnot_depth"] = k.cnot_depth;
  o.summary["table_total"] = t.total;
  o.summary["table_depth"] = t.total_depth;
  check(o, k.blocks.at(Block::V).cnot == t.v, "V(u) CNOT count differs from 2L(L-1)");
  check(o, k.blocks.at(Block::OaFirst).cnot == t.oa, "O_a CNOT count differs from 4(L-1)");
  check(o, k.blocks.at(Block::Ob).cnot == t.ob, "O_b CNOT count differs from 12(L-1)");
  check(o, k.cnot_total == t.total, "total CNOT count differs from 4L^2+16L-20");
  check(o, k.cnot_depth == t.total_depth, "CNOT depth differs from 36L-44");
  if (L <= c.simulate_max_L) {
    const auto r = simulate_circuit(circ, sector_to_register(m.vacuum, m.basis, true), 0);
    double leak = 0;
    const VecC out = register_to_sector(r.state, m.basis, &leak);
    auto fid = [&](const VecC& v) { return std::norm(v.dot(out)) / v.squaredNorm(); };
    const VecC target = packet.A_direct.apply(m.vacuum);
    const VecC bdag = packet.B_dag.apply(m.vacuum);
    const double lsum = diagonal_weights(packet.eigvals).cwiseAbs().sum();
    const double expected = target.squaredNorm() / (lsum * lsum);
    auto f = open_out(c, o, "circuit_check.csv");
    f << "quantity,value\n";
    f << "success_probability," << fmt(r.probability) << '\n';
    f << "expected_probability," << fmt(expected) << '\n';
    f << "fidelity_vs_direct_target," << fmt(fid(target)) << '\n';
    f << "fidelity_vs_Bdag," << fmt(fid(bdag)) << '\n';
    f << "sector_leakage," << fmt(leak) << '\n';
    o.summary["fidelity_vs_Bdag"] = fid(bdag);
    check(o, std::abs(r.probability - expected) < 1e-10, "success probability mismatch");
    check(o, fid(bdag) >= 0.999, "fidelity against B^dag|Omega> below 0.999");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z2 lattice gauge theory meson toolkit"};
  std::string config_path, out;
  bool do_check = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> L;
  std::optional<double> m, eps;
  std::vector<std::string> pairs;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out, "output directory");
  app.add_flag("--check", do_check, "exit nonzero when a tolerance is violated");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--L", L, "number of sites");
  app.add_option("--m", m, "fermion mass");
  app.add_option("--eps", eps, "electric field coupling");
  app.add_option("overrides", pairs, "extra key=value settings");
  CLI11_PARSE(app, argc, argv);

  try {
    KeyValues kv;
    if (!config_path.empty()) kv = read_config_file(config_path);
    for (const auto& p : pairs) {
      for (const auto& [k, v] : parse_key_values(p)) kv[k] = v;
    }
    auto num = [](double x) {
      std::ostringstream s;
      s.precision(17);
      s << x;
      return s.str();
    };
    if (!out.empty()) kv["out"] = out;
    if (seed) kv["seed"] = std::to_string(*seed);
    if (L) kv["L"] = std::to_string(*L);
    if (m) kv["m"] = num(*m);
    if (eps) kv["eps"] = num(*eps);
    const ExperimentConfig cfg = make_config(kv);
    fs::create_directories(cfg.out);

    Outcome o;
    if (cfg.mode == "spectrum") o = run_spectrum(cfg);
    else if (cfg.mode == "qse_bench") o = run_qse_bench(cfg);
    else if (cfg.mode == "scatter") o = run_scatter(cfg);
    else o = run_circuit(cfg);

    ojson man;
    man["tool"] = "z2meson";
    man["version"] = kVersion;
    man["mode"] = cfg.mode;
    man["kernels"] = std::string(kernels::backend_name(kernels::active_backend()));
    man["config"] = cfg.raw;
    man["model"] = {{"L", cfg.model.L}, {"m", cfg.model.m}, {"eps", cfg.model.eps}};
    man["seed"] = cfg.seed;
    const auto& s = cfg.scatter;
    man["qse"] = {{"s_cut", s.qse.s_cut}, {"c_tol", s.qse.c_tol}, {"z_tol", s.qse.z_tol},
                  {"stable_window", s.qse.stable_window},
                  {"label_rule", s.qse.rule == LabelRule::VectorBranch ? "vector_branch" : "half_zone"}};
    if (cfg.mode == "scatter") {
      man["trotter"] = {{"dt", s.dt}, {"t_final", s.t_final}, {"measure_every", s.measure_every},
                        {"exact_check", s.exact_check}};
    }
    man["files"] = o.files;
    man["summary"] = o.summary;
    man["check_failures"] = o.failures;
    std::ofstream(fs::path(cfg.out) / "manifest.json") << man.dump(2) << '\n';

    std::cout << o.summary.dump() << '\n';
    for (const auto& f : o.failures) std::cerr << "check failed: " << f << '\n';
    return (do_check && !o.failures.empty()) ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
