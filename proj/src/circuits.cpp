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

#include "z2meson/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "z2meson/io.hpp"
#include "z2meson/wavepacket.hpp"

namespace z2m {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

int f_qubit(int n) { return 2 * (n - 1); }
int g_qubit(int n) { return 2 * (n - 1) + 1; }

bool is_rotation(GateKind k) {
  return k == GateKind::MatterRotation || k == GateKind::GaugeRotation ||
         k == GateKind::DressedRotation;
}

bool has_angle(GateKind k) {
  return is_rotation(k) || k == GateKind::Phase || k == GateKind::Rx || k == GateKind::Ry ||
         k == GateKind::Rz;
}

// Zeroes x(b) against x(a) with a phase on b and a real rotation on (a, b).
// Returns {phase, theta}; the same ops must be applied by the caller to rows.
std::pair<double, double> eliminate(cplx a, cplx b) {
  const double pa = std::abs(a) > 0 ? std::arg(a) : 0.0;
  return {pa - std::arg(b), std::atan2(std::abs(b), std::abs(a))};
}

void rotate_rows(MatC& m, int ra, int rb, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Eigen::RowVectorXcd A = m.row(ra), B = m.row(rb);
  m.row(ra) = c * A + s * B;
  m.row(rb) = -s * A + c * B;
}

// Symmetric difference of two Z supports.
std::vector<int> product_support(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int asap_depth(const std::vector<GivensGate>& prims, int num_qubits) {
  std::vector<int> d(static_cast<std::size_t>(num_qubits), 0);
  int best = 0;
  for (const auto& g : prims) {
    if (g.kind != GateKind::CX) continue;
    const int v = std::max(d[g.qubits[0]], d[g.qubits[1]]) + 1;
    d[g.qubits[0]] = d[g.qubits[1]] = v;
    best = std::max(best, v);
  }
  return best;
}

int gate_cnots(const GivensGate& g) {
  const auto e = expand_gate(g);
  return static_cast<int>(std::count_if(e.begin(), e.end(),
                                        [](const GivensGate& x) { return x.kind == GateKind::CX; }));
}

int gate_depth(const GivensGate& g) {
  int nq = 0;
  for (int q : g.qubits) nq = std::max(nq, q + 1);
  return asap_depth(expand_gate(g), nq);
}

GivensGate prim(GateKind k, std::vector<int> q, double angle = 0.0) {
  return GivensGate{k, std::move(q), angle, 0, Block::Other};
}

GivensCircuit circuit_from_ops(const std::vector<ModeOp>& ops, int L, Flavor flavor,
                               const PauliZStrings& strings) {
  GivensCircuit c;
  c.num_qubits = 2 * L;
  int max_layer = -1;
  for (const auto& op : ops) max_layer = std::max(max_layer, op.layer);
  // V(E_1 ... E_K) = V(E_1) ... V(E_K): E_K acts first.
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    GivensGate g;
    g.layer = max_layer - it->layer;
    const int a = it->mode;
    if (!it->rotation) {
      g.kind = GateKind::Phase;
      if (flavor == Flavor::Matter) {
        g.qubits = {f_qubit(a)};
        g.angle = it->angle;
      } else {
        // occupied gauge mode is |0>; equal up to a global phase
        g.qubits = {g_qubit(a)};
        g.angle = -it->angle;
      }
    } else if (flavor == Flavor::Matter) {
      g.kind = GateKind::MatterRotation;
      g.qubits = {f_qubit(a), f_qubit(a + 1), g_qubit(a)};
      g.angle = it->angle;
    } else if (flavor == Flavor::Gauge) {
      g.kind = GateKind::GaugeRotation;
      g.qubits = {g_qubit(a), g_qubit(a + 1)};
      g.angle = it->angle;
    } else {
      g.kind = GateKind::DressedRotation;
      g.qubits = {g_qubit(a), g_qubit(a + 1)};
      const auto supp = product_support(strings[a - 1], strings[a]);
      for (int s : supp) g.qubits.push_back(f_qubit(s));
      // lattice sigma^z = -Z on matter qubits
      g.angle = (supp.size() % 2 == 0) ? it->angle : -it->angle;
    }
    c.gates.push_back(std::move(g));
  }
  c.num_layers = max_layer + 1;
  return c;
}

}  // namespace

void GivensCircuit::append(const GivensCircuit& other, Block block) {
  num_qubits = std::max(num_qubits, other.num_qubits);
  for (auto g : other.gates) {
    g.layer += num_layers;
    g.block = block;
    gates.push_back(std::move(g));
  }
  num_layers += other.num_layers;
}

GivensCircuit GivensCircuit::adjoint() const {
  GivensCircuit c = *this;
  std::reverse(c.gates.begin(), c.gates.end());
  for (auto& g : c.gates) {
    if (has_angle(g.kind)) g.angle = -g.angle;
    g.layer = num_layers - 1 - g.layer;
  }
  return c;
}

std::vector<ModeOp> givens_qr(const MatC& u, double tol) {
  const int L = static_cast<int>(u.rows());
  MatC w = u;
  std::vector<ModeOp> elim;  // G_i = R_i Phi_i in elimination order
  for (int c = 1; c <= L - 1; ++c) {
    for (int r = L; r >= c + 1; --r) {
      const cplx a = w(r - 2, c - 1), b = w(r - 1, c - 1);
      if (std::abs(b) < tol) continue;
      const auto [phi, theta] = eliminate(a, b);
      const int layer = 2 * (c - 1) + (L - r);
      w.row(r - 1) *= std::polar(1.0, phi);
      rotate_rows(w, r - 2, r - 1, theta);
      elim.push_back({false, r, phi, layer});
      elim.push_back({true, r - 1, theta, layer});
    }
  }
  int last = 0;
  for (const auto& e : elim) last = std::max(last, e.layer + 1);
  // u = G_1^dag ... G_K^dag D
  std::vector<ModeOp> ops;
  for (std::size_t i = 0; i < elim.size(); i += 2) {
    const auto& ph = elim[i];
    const auto& ro = elim[i + 1];
    if (std::abs(ph.angle) > tol) ops.push_back({false, ph.mode, -ph.angle, ph.layer});
    ops.push_back({true, ro.mode, -ro.angle, ro.layer});
  }
  for (int m = 1; m <= L; ++m) {
    const double phi = std::arg(w(m - 1, m - 1));
    if (std::abs(phi) > tol) ops.push_back({false, m, phi, last});
  }
  return ops;
}

std::vector<ModeOp> givens_first_column(const VecC& w0, double tol) {
  const int L = static_cast<int>(w0.size());
  VecC w = w0;
  std::vector<ModeOp> ops;
  int layer = 0;
  std::vector<ModeOp> elim;
  for (int a = L - 1; a >= 1; --a) {
    const cplx x = w[a - 1], y = w[a];
    if (std::abs(y) < tol) continue;
    const auto [phi, theta] = eliminate(x, y);
    w[a] *= std::polar(1.0, phi);
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx A = w[a - 1], B = w[a];
    w[a - 1] = c * A + s * B;
    w[a] = -s * A + c * B;
    elim.push_back({false, a + 1, phi, layer});
    elim.push_back({true, a, theta, layer});
    ++layer;
  }
  for (std::size_t i = 0; i < elim.size(); i += 2) {
    if (std::abs(elim[i].angle) > tol) ops.push_back({false, elim[i].mode, -elim[i].angle, elim[i].layer});
    ops.push_back({true, elim[i + 1].mode, -elim[i + 1].angle, elim[i + 1].layer});
  }
  const double alpha = std::arg(w[0]);
  if (std::abs(alpha) > tol) ops.push_back({false, 1, alpha, layer});
  return ops;
}

MatC mode_matrix(const std::vector<ModeOp>& ops, int L) {
  MatC m = MatC::Identity(L, L);
  for (const auto& op : ops) {
    MatC e = MatC::Identity(L, L);
    const int a = op.mode - 1;
    if (op.rotation) {
      const double c = std::cos(op.angle), s = std::sin(op.angle);
      e(a, a) = c;
      e(a, a + 1) = s;
      e(a + 1, a) = -s;
      e(a + 1, a + 1) = c;
    } else {
      e(a, a) = std::polar(1.0, op.angle);
    }
    m = m * e;
  }
  return m;
}

PauliZStrings default_pauli_strings(int L) {
  PauliZStrings p(static_cast<std::size_t>(L));
  for (int n = 2; n <= L; ++n) p[n - 1] = {n - 1};
  return p;
}

GivensCircuit decompose_V(const MatC& u, Flavor flavor, Columns columns,
                          const PauliZStrings& strings) {
  const int L = static_cast<int>(u.rows());
  if (u.cols() != L || L < 2) throw std::invalid_argument("decompose_V: u must be square, L >= 2");
  if (flavor == Flavor::Dressed) {
    if (static_cast<int>(strings.size()) != L) throw std::invalid_argument("decompose_V: need L strings");
    if (!strings[0].empty()) throw std::invalid_argument("decompose_V: P_1 must be the identity");
  }
  std::vector<ModeOp> ops;
  if (columns == Columns::All) {
    if ((u.adjoint() * u - MatC::Identity(L, L)).cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument("decompose_V: u is not unitary");
    }
    ops = givens_qr(u);
  } else {
    if (std::abs(u.col(0).norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("decompose_V: first column is not normalized");
    }
    ops = givens_first_column(u.col(0));
  }
  return circuit_from_ops(ops, L, flavor, strings);
}

double o_norm(const VecR& lambdas) { return std::sqrt(lambdas.cwiseAbs().sum() / 2.0); }

namespace {

GivensCircuit sandwich_x(const VecR& w, Flavor flavor, const PauliZStrings& strings) {
  const int L = static_cast<int>(w.size());
  MatC u = MatC::Zero(L, L);
  u.col(0) = w.cast<cplx>();
  const GivensCircuit V = decompose_V(u, flavor, Columns::First, strings);
  GivensCircuit c;
  c.num_qubits = 2 * L;
  c.append(V.adjoint(), Block::Other);
  GivensCircuit x;
  x.num_qubits = 2 * L;
  x.num_layers = 1;
  x.gates.push_back(prim(GateKind::X, {g_qubit(1)}));
  c.append(x, Block::Other);
  c.append(V, Block::Other);
  return c;
}

VecR normalized_weights(const VecR& lambdas, bool signs) {
  if (lambdas.size() < 2) throw std::invalid_argument("need at least two weights");
  VecR w(lambdas.size());
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    const double r = std::sqrt(std::abs(lambdas[i]));
    w[i] = (signs && lambdas[i] < 0) ? -r : r;
  }
  const double n = w.norm();
  if (n == 0.0) throw std::invalid_argument("all weights vanish");
  return w / n;
}

}  // namespace

GivensCircuit build_Oa(const VecR& lambdas) {
  return sandwich_x(normalized_weights(lambdas, true), Flavor::Gauge, {});
}

GivensCircuit build_Ob(const VecR& lambdas, const PauliZStrings& strings) {
  return sandwich_x(normalized_weights(lambdas, false), Flavor::Dressed, strings);
}

VecR diagonal_weights(const VecR& eig) {
  const Eigen::Index L = eig.size();
  VecR lp(L);
  lp[0] = eig.sum() / 2.0;
  for (Eigen::Index n = 1; n < L; ++n) lp[n] = (eig[n - 1] - eig[L - 1]) / 2.0;
  return lp;
}

GivensCircuit assemble_packet_circuit(const VecR& eigvals, const MatC& u) {
  const int L = static_cast<int>(u.rows());
  const VecR lp = diagonal_weights(eigvals);
  const auto strings = default_pauli_strings(L);
  const GivensCircuit V = decompose_V(u, Flavor::Matter, Columns::All);
  const GivensCircuit Oa = build_Oa(lp);
  const GivensCircuit Ob = build_Ob(lp, strings);

  const int anc = 2 * L;
  auto single = [&](std::vector<GivensGate> gs) {
    GivensCircuit s;
    s.num_qubits = 2 * L + 1;
    s.num_layers = static_cast<int>(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
      gs[i].layer = static_cast<int>(i);
      s.gates.push_back(gs[i]);
    }
    return s;
  };
  // Oa = Va^dag, X_{g1}, Va: split around the central X.
  auto split = [](const GivensCircuit& o, GivensCircuit& pre, GivensCircuit& post) {
    const int mid = static_cast<int>(o.num_layers / 2);
    pre.num_qubits = post.num_qubits = o.num_qubits;
    pre.num_layers = mid;
    post.num_layers = o.num_layers - mid - 1;
    for (const auto& g : o.gates) {
      if (g.layer < mid) pre.gates.push_back(g);
      if (g.layer > mid) {
        auto h = g;
        h.layer -= mid + 1;
        post.gates.push_back(h);
      }
    }
  };
  GivensCircuit va_dag, va;
  split(Oa, va_dag, va);

  GivensCircuit c;
  c.num_qubits = 2 * L + 1;
  c.ancilla = anc;
  c.append(V.adjoint(), Block::VDag);
  c.append(single({prim(GateKind::H, {anc})}), Block::HadamardTest);
  c.append(va_dag, Block::OaFirst);
  c.append(single({prim(GateKind::X, {anc}), prim(GateKind::CX, {anc, g_qubit(1)}),
                   prim(GateKind::X, {anc})}),
           Block::HadamardTest);
  c.append(va, Block::OaFirst);
  c.append(Ob, Block::Ob);
  c.append(va_dag, Block::OaSecond);
  c.append(single({prim(GateKind::CX, {anc, g_qubit(1)})}), Block::HadamardTest);
  c.append(va, Block::OaSecond);
  c.append(single({prim(GateKind::H, {anc})}), Block::HadamardTest);
  c.append(V, Block::V);
  c.counts = count_resources(c);
  return c;
}

GivensCircuit assemble_packet_circuit(const PacketOperator& packet) {
  return assemble_packet_circuit(packet.eigvals, packet.u);
}

std::vector<GivensGate> expand_gate(const GivensGate& g) {
  if (!is_rotation(g.kind)) return {g};
  const int a = g.qubits[0], b = g.qubits[1];
  std::vector<GivensGate> out;
  auto cz_all = [&] {
    for (std::size_t i = 2; i < g.qubits.size(); ++i) {
      out.push_back(prim(GateKind::H, {a}));
      out.push_back(prim(GateKind::CX, {g.qubits[i], a}));
      out.push_back(prim(GateKind::H, {a}));
    }
  };
  cz_all();
  // exp(-i phi/2 (XX + YY)), swap = (XX + YY) / 2
  const double phi = g.angle;
  out.push_back(prim(GateKind::Rx, {a}, kHalfPi));
  out.push_back(prim(GateKind::Rx, {b}, kHalfPi));
  out.push_back(prim(GateKind::CX, {a, b}));
  out.push_back(prim(GateKind::Rx, {a}, phi));
  out.push_back(prim(GateKind::Rz, {b}, phi));
  out.push_back(prim(GateKind::CX, {a, b}));
  out.push_back(prim(GateKind::Rx, {a}, -kHalfPi));
  out.push_back(prim(GateKind::Rx, {b}, -kHalfPi));
  cz_all();
  for (auto& x : out) {
    x.layer = g.layer;
    x.block = g.block;
  }
  return out;
}

std::vector<GivensGate> expand(const GivensCircuit& c) {
  std::vector<GivensGate> out;
  for (const auto& g : c.gates) {
    auto e = expand_gate(g);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

CircuitCounts count_resources(const GivensCircuit& c) {
  CircuitCounts k;
  std::map<Block, std::map<int, int>> layer_depth;
  for (const auto& g : c.gates) {
    const int n = gate_cnots(g);
    auto& b = k.blocks[g.block];
    b.cnot += n;
    if (is_rotation(g.kind)) {
      ++b.rotations;
      ++k.rotation_count;
    }
    auto& d = layer_depth[g.block][g.layer];
    d = std::max(d, gate_depth(g));
    if (g.block == Block::HadamardTest) {
      k.hadamard_test_cnot += n;
    } else {
      k.cnot_total += n;
    }
  }
  for (auto& [blk, layers] : layer_depth) {
    int s = 0;
    for (const auto& [l, d] : layers) s += d;
    k.blocks[blk].depth = s;
    if (blk != Block::HadamardTest) k.cnot_depth += s;
  }
  k.asap_depth = asap_depth(expand(c), std::max(c.num_qubits, 1));
  return k;
}

ResourceFormulas resource_formulas(int L) {
  return {2 * L * (L - 1),     4 * (L - 1),     12 * (L - 1),     4 * L * L + 16 * L - 20,
          4 * (2 * L - 3),     4 * (L - 1),     12 * (L - 1),     36 * L - 44};
}

std::string kind_name(GateKind k) {
  switch (k) {
    case GateKind::MatterRotation: return "matter_rotation";
    case GateKind::GaugeRotation: return "gauge_rotation";
    case GateKind::DressedRotation: return "dressed_gauge_rotation";
    case GateKind::Phase: return "phase";
    case GateKind::CX: return "cx";
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
  }
  return "?";
}

std::string block_name(Block b) {
  switch (b) {
    case Block::V: return "V";
    case Block::VDag: return "V_dag";
    case Block::OaFirst: return "O_a_first";
    case Block::Ob: return "O_b";
    case Block::OaSecond: return "O_a_second";
    case Block::HadamardTest: return "hadamard_test";
    case Block::Other: return "other";
  }
  return "?";
}

void write_gates(std::ostream& os, const std::vector<GivensGate>& gates) {
  for (const auto& g : gates) {
    os << "GATE " << kind_name(g.kind);
    for (int q : g.qubits) os << ' ' << q;
    os << ' ' << fmt(g.angle) << '\n';
  }
}

std::string resource_report_json(const GivensCircuit& c, int L) {
  nlohmann::ordered_json j;
  const auto& k = c.counts;
  const ResourceFormulas t = resource_formulas(L);
  j["L"] = L;
  j["num_qubits"] = c.num_qubits;
  j["gates"] = c.gates.size();
  j["rotations"] = k.rotation_count;
  j["cnot_total"] = k.cnot_total;
  j["cnot_depth"] = k.cnot_depth;
  j["asap_cnot_depth"] = k.asap_depth;
  j["hadamard_test_cnot"] = k.hadamard_test_cnot;
  auto& blocks = j["blocks"];
  for (const auto& [b, v] : k.blocks) {
    blocks[block_name(b)] = {{"cnot", v.cnot}, {"depth", v.depth}, {"rotations", v.rotations}};
  }
  j["formulas"] = {{"V", t.v},           {"O_a", t.oa},           {"O_b", t.ob},
                 {"total", t.total},   {"V_depth", t.v_depth},  {"O_a_depth", t.oa_depth},
                 {"O_b_depth", t.ob_depth}, {"total_depth", t.total_depth}};
  return j.dump(2);
}

}  // namespace z2m
