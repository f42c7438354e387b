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

#include "z2meson/qse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "z2meson/io.hpp"

namespace z2m {

QseMatrices build_qse_matrices(const VecC& ground, const Basis& basis,
                               const SparseOperator& H, const SparseOperator& C) {
  const int L = basis.L();
  const int n2 = L * L;
  QseMatrices q;
  q.L = L;
  q.vectors.resize(basis.dim(), n2);
  for (int n = 1; n <= L; ++n) {
    for (int l = 1; l <= L; ++l) {
      q.vectors.col(pair_index(n, l, L)) = meson_basis_vector(n, l, ground, basis);
    }
  }
  // M_I^dag |Omega> = M_(l,n) |Omega>.
  MatC W(basis.dim(), n2);
  for (int n = 1; n <= L; ++n) {
    for (int l = 1; l <= L; ++l) {
      W.col(pair_index(n, l, L)) = q.vectors.col(pair_index(l, n, L));
    }
  }
  MatC HV(basis.dim(), n2), CV(basis.dim(), n2);
  for (int i = 0; i < n2; ++i) {
    const VecC v = q.vectors.col(i);
    HV.col(i) = H.apply(v);
    CV.col(i) = C.apply(v);
  }
  q.H = q.vectors.adjoint() * HV;
  q.C = q.vectors.adjoint() * CV;
  q.S = q.vectors.adjoint() * q.vectors;
  q.Z = (W.adjoint() * W).transpose();
  q.vacuum_energy = ground.dot(H.apply(ground)).real() / ground.squaredNorm();
  return q;
}

namespace {

struct Whitening {
  MatC X;  // n2 x kept, X^dag S X = I
};

Whitening whiten(const MatC& S, double s_cut) {
  Eigen::SelfAdjointEigenSolver<MatC> es(S);
  const VecR s = es.eigenvalues();
  const double smax = s.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > s_cut * smax) keep.push_back(i);
  }
  Whitening w;
  w.X.resize(S.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    w.X.col(static_cast<Eigen::Index>(j)) =
        es.eigenvectors().col(keep[j]) / std::sqrt(s[keep[j]]);
  }
  return w;
}

int momentum_from_phase(cplx z, int L) {
  const double k = -std::arg(z) * L / (2.0 * std::numbers::pi);
  return wrap_momentum(static_cast<int>(std::lround(k)), L);
}

void fix_phase(VecC& a, int L) {
  cplx ref = a[pair_index(2, 1, L)];
  if (std::abs(ref) < 1e-8) {
    Eigen::Index imax = 0;
    a.cwiseAbs().maxCoeff(&imax);
    ref = a[imax];
  }
  a *= std::abs(ref) / ref;
}

}  // namespace

int wrap_momentum(int k, int L) {
  const int h = L / 2;
  return ((k + h) % L + L) % L - h;
}

QseResult solve_qse(const QseMatrices& mats, const QseOptions& opt) {
  const int L = mats.L;
  const Whitening w = whiten(mats.S, opt.s_cut);
  const MatC A = w.X.adjoint() * (mats.H + mats.C + mats.Z) * w.X;
  Eigen::ComplexEigenSolver<MatC> es(A);
  QseResult res;
  res.L = L;
  res.kept_modes = static_cast<int>(w.X.cols());
  for (Eigen::Index j = 0; j < A.rows(); ++j) {
    VecC y = es.eigenvectors().col(j);
    y /= y.norm();
    MesonSolution s;
    s.lambda = es.eigenvalues()[j];
    s.residual = (A * y - s.lambda * y).norm();
    VecC a = w.X * y;
    a /= std::sqrt((a.adjoint() * mats.S * a)(0, 0).real());
    fix_phase(a, L);
    s.E = (a.adjoint() * mats.H * a)(0, 0).real();
    s.cek = (a.adjoint() * mats.C * a)(0, 0);
    s.NZ = (a.adjoint() * mats.Z * a)(0, 0).real();
    s.accepted = std::abs(std::abs(s.cek) - 1.0) < opt.c_tol && s.NZ < opt.z_tol;
    s.coeffs = std::move(a);
    res.solutions.push_back(std::move(s));
  }
  if (opt.stable_window) {
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& s : res.solutions) {
      if (s.accepted) gap = std::min(gap, s.E - mats.vacuum_energy);
    }
    for (auto& s : res.solutions) {
      if (s.accepted && s.E - mats.vacuum_energy >= 2.0 * gap) s.accepted = false;
    }
  }
  std::stable_sort(res.solutions.begin(), res.solutions.end(),
                   [](const MesonSolution& a, const MesonSolution& b) {
                     if (a.accepted != b.accepted) return a.accepted;
                     return a.E + a.NZ < b.E + b.NZ;
                   });
  if (opt.rule == LabelRule::VectorBranch) {
    std::map<int, bool> seen;
    for (auto& s : res.solutions) {
      if (!s.accepted) {
        s.c = std::real(s.cek) >= 0 ? 1 : -1;
        s.k_int = momentum_from_phase(s.cek * static_cast<double>(s.c), L);
        continue;
      }
      const int q = momentum_from_phase(-s.cek, L);
      if (!seen[q]) {
        seen[q] = true;
        s.c = -1;
        s.k_int = q;
      } else {
        s.c = 1;
        s.k_int = momentum_from_phase(s.cek, L);
      }
    }
  } else {
    for (auto& s : res.solutions) {
      s.c = std::abs(std::real(s.cek)) < 1e-6 ? -1 : (std::real(s.cek) > 0 ? 1 : -1);
      s.k_int = momentum_from_phase(s.cek * static_cast<double>(s.c), L);
    }
  }
  return res;
}

std::vector<const MesonSolution*> QseResult::accepted(int c) const {
  std::vector<const MesonSolution*> out;
  for (const auto& s : solutions) {
    if (s.accepted && s.c == c) out.push_back(&s);
  }
  return out;
}

std::vector<int> QseResult::lambda_star() const {
  std::vector<int> ks;
  for (const auto* s : accepted(-1)) {
    if (std::find(ks.begin(), ks.end(), s->k_int) == ks.end()) ks.push_back(s->k_int);
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

const MesonSolution* QseResult::vector_meson(int k) const {
  for (const auto* s : accepted(-1)) {
    if (s->k_int == k) return s;
  }
  return nullptr;
}

std::vector<double> ritz_values(const QseMatrices& mats, double s_cut) {
  const Whitening w = whiten(mats.S, s_cut);
  const MatC A = w.X.adjoint() * mats.H * w.X;
  Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (A + A.adjoint()));
  const VecR v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

VecC meson_state(const QseMatrices& mats, const VecC& coeffs) {
  return mats.vectors * coeffs;
}

double best_fidelity(const VecC& psi, const EigenSolution& exact) {
  const double nn = psi.squaredNorm();
  double best = 0.0;
  for (const auto& v : exact.vectors) {
    best = std::max(best, std::norm(v.dot(psi)) / nn);
  }
  return best;
}

std::vector<BenchRow> benchmark_qse(const QseResult& qse, const QseMatrices& mats,
                                    const EigenSolution& exact, double E0) {
  std::vector<BenchRow> rows;
  for (const auto& s : qse.solutions) {
    if (!s.accepted) continue;
    const VecC psi = meson_state(mats, s.coeffs);
    const double nn = psi.squaredNorm();
    BenchRow r;
    r.k_int = s.k_int;
    r.c = s.c;
    r.E_qse = s.E - E0;
    r.NZ = s.NZ;
    for (std::size_t i = 0; i < exact.vectors.size(); ++i) {
      const double f = std::norm(exact.vectors[i].dot(psi)) / nn;
      if (f > r.fidelity) {
        r.fidelity = f;
        r.E_exact = exact.energies[i] - E0;
      }
    }
    rows.push_back(r);
  }
  return rows;
}

void write_solution_csv(std::ostream& os, const MesonSolution& s, int L) {
  os << "n,l,re,im\n";
  for (int n = 1; n <= L; ++n) {
    for (int l = 1; l <= L; ++l) {
      const cplx a = s.coeffs[pair_index(n, l, L)];
      os << n << ',' << l << ',' << fmt(a.real()) << ',' << fmt(a.imag()) << '\n';
    }
  }
}

std::string solution_header_json(const MesonSolution& s) {
  nlohmann::ordered_json j;
  j["E"] = s.E;
  j["k_int"] = s.k_int;
  j["c"] = s.c;
  j["NZ"] = s.NZ;
  j["cek_re"] = s.cek.real();
  j["cek_im"] = s.cek.imag();
  j["accepted"] = s.accepted;
  if (s.fidelity) j["fidelity"] = *s.fidelity;
  return j.dump();
}

}  // namespace z2m
