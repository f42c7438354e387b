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

#include "z2meson/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace z2m {

void ModelParams::validate() const {
  if (L < 4 || L % 2 != 0) {
    throw std::invalid_argument("L must be even and >= 4, got " + std::to_string(L));
  }
  if (L > 14) throw std::invalid_argument("L > 14 exceeds the supported label width");
}

Basis Basis::full(int L) {
  if (L < 1 || 2 * L > 30) throw std::invalid_argument("Basis::full: bad L");
  Basis b;
  b.kind_ = BasisKind::Full;
  b.L_ = L;
  b.dim_ = std::int64_t{1} << (2 * L);
  return b;
}

Basis Basis::sector(int L) {
  Basis b;
  b.kind_ = BasisKind::Sector;
  b.L_ = L;
  b.states_ = enumerate_sector(L);
  b.dim_ = static_cast<std::int64_t>(b.states_.size());
  return b;
}

std::int64_t Basis::index_of(Label s) const {
  if (kind_ == BasisKind::Full) {
    return s < static_cast<Label>(dim_) ? static_cast<std::int64_t>(s) : -1;
  }
  const auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return -1;
  return it - states_.begin();
}

bool satisfies_gauss(Label s, int L) {
  for (int n = 1; n <= L; ++n) {
    const int prev = n == 1 ? L : n - 1;
    const int sign = (n % 2 == 1) ? 1 : -1;
    if (sign * x_value(s, prev) * sigma_z(s, n) * x_value(s, n) != 1) return false;
  }
  return true;
}

int matter_weight(Label s, int L) {
  int w = 0;
  for (int n = 1; n <= L; ++n) w += occupied(s, n) ? 1 : 0;
  return w;
}

std::vector<Label> enumerate_sector(int L) {
  if (L < 2 || L % 2 != 0) {
    throw std::invalid_argument("enumerate_sector: L must be even, got " +
                                std::to_string(L));
  }
  // For each half-filled matter pattern the Gauss law fixes every link from
  // the value of link L, giving exactly two configurations.
  std::vector<Label> out;
  const Label matter_count = Label{1} << L;
  for (Label mp = 0; mp < matter_count; ++mp) {
    if (__builtin_popcountll(mp) != L / 2) continue;
    for (int xl = 0; xl < 2; ++xl) {
      Label s = 0;
      for (int n = 1; n <= L; ++n) {
        if ((mp >> (n - 1)) & 1U) s |= Label{1} << QubitLayout::matter(n);
      }
      int xprev = xl == 0 ? 1 : -1;
      for (int n = 1; n <= L; ++n) {
        const int sign = (n % 2 == 1) ? 1 : -1;
        const int xn = sign * xprev * sigma_z(s, n);
        if (xn == -1) s |= Label{1} << QubitLayout::link(n);
        xprev = xn;
      }
      if (satisfies_gauss(s, L)) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

cplx jw_phase(Label s, int n, cplx unit) {
  cplx a = 1.0;
  for (int l = 1; l < n; ++l) a *= unit * static_cast<double>(sigma_z(s, l));
  return a;
}

}  // namespace

std::optional<WordResult> apply_word(const Word& w, Label s, int L) {
  cplx amp = 1.0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const int n = it->site;
    if (n < 1 || n > L) throw std::out_of_range("apply_word: site out of range");
    switch (it->kind) {
      case Prim::Create:
        if (occupied(s, n)) return std::nullopt;
        amp *= jw_phase(s, n, -kI);
        s |= Label{1} << QubitLayout::matter(n);
        break;
      case Prim::Destroy:
        if (!occupied(s, n)) return std::nullopt;
        amp *= jw_phase(s, n, kI);
        s &= ~(Label{1} << QubitLayout::matter(n));
        break;
      case Prim::LinkZ:
        s ^= Label{1} << QubitLayout::link(n);
        break;
      case Prim::LinkX:
        amp *= static_cast<double>(x_value(s, n));
        break;
      case Prim::Number:
        if (!occupied(s, n)) return std::nullopt;
        break;
      case Prim::SigmaZ:
        amp *= static_cast<double>(sigma_z(s, n));
        break;
    }
  }
  return WordResult{amp, s};
}

SparseOperator build_operator(const Basis& basis, const std::vector<Term>& terms) {
  std::vector<Triplet> t;
  const int L = basis.L();
  for (std::int64_t j = 0; j < basis.dim(); ++j) {
    const Label s = basis.state(j);
    for (const auto& term : terms) {
      const auto r = apply_word(term.word, s, L);
      if (!r) continue;
      const std::int64_t i = basis.index_of(r->state);
      if (i < 0) throw std::logic_error("build_operator: term leaves the basis");
      t.push_back({i, j, term.coef * r->amp});
    }
  }
  return {basis.kind(), basis.dim(), std::move(t)};
}

VecC apply_terms(const std::vector<Term>& terms, const VecC& psi, const Basis& basis) {
  VecC out = VecC::Zero(basis.dim());
  for (std::int64_t j = 0; j < basis.dim(); ++j) {
    if (psi[j] == cplx{0.0, 0.0}) continue;
    const Label s = basis.state(j);
    for (const auto& term : terms) {
      const auto r = apply_word(term.word, s, basis.L());
      if (!r) continue;
      const std::int64_t i = basis.index_of(r->state);
      if (i < 0) throw std::logic_error("apply_terms: term leaves the basis");
      out[i] += term.coef * r->amp * psi[j];
    }
  }
  return out;
}

namespace {

int next_site(int n, int L) { return n == L ? 1 : n + 1; }

void add_hop(std::vector<Term>& t, int n, int L) {
  const int n1 = next_site(n, L);
  t.push_back({0.5, {{Prim::Create, n}, {Prim::LinkZ, n}, {Prim::Destroy, n1}}});
  t.push_back({0.5, {{Prim::Create, n1}, {Prim::LinkZ, n}, {Prim::Destroy, n}}});
}

double stagger(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

std::vector<Term> kinetic_terms(int L) {
  std::vector<Term> t;
  for (int n = 1; n <= L; ++n) add_hop(t, n, L);
  return t;
}

std::vector<Term> mass_terms(const ModelParams& p) {
  std::vector<Term> t;
  for (int n = 1; n <= p.L; ++n) t.push_back({p.m * stagger(n), {{Prim::Number, n}}});
  return t;
}

std::vector<Term> electric_terms(const ModelParams& p) {
  std::vector<Term> t;
  for (int n = 1; n <= p.L; ++n) t.push_back({p.eps, {{Prim::LinkX, n}}});
  return t;
}

std::vector<Term> local_terms(const ModelParams& p, int n) {
  std::vector<Term> t;
  add_hop(t, n, p.L);
  const double c = 0.25 * p.m * stagger(n);
  t.push_back({c, {{Prim::SigmaZ, n}}});
  t.push_back({-c, {{Prim::SigmaZ, next_site(n, p.L)}}});
  t.push_back({p.eps, {{Prim::LinkX, n}}});
  return t;
}

HamiltonianParts build_hamiltonian_parts(const ModelParams& p, const Basis& basis) {
  p.validate();
  if (basis.L() != p.L) throw std::invalid_argument("basis/params L mismatch");
  HamiltonianParts h;
  h.kinetic = build_operator(basis, kinetic_terms(p.L));
  h.mass = build_operator(basis, mass_terms(p));
  h.electric = build_operator(basis, electric_terms(p));
  h.total = h.kinetic.combined(1.0, h.mass, 1.0).combined(1.0, h.electric, 1.0);
  return h;
}

SparseOperator build_hamiltonian(const ModelParams& p, const Basis& basis) {
  return build_hamiltonian_parts(p, basis).total;
}

namespace {

// C xi_n C^-1 = (-1)^n xi_{n+1}^dagger, C Z_{g,n} C^-1 = Z_{g,n+1}, C|0> =
// prod_n xi_n^dagger |0> with links shifted by one.
WordResult conjugate_state(Label s, int L) {
  std::vector<int> occ;
  for (int n = 1; n <= L; ++n) {
    if (occupied(s, n)) occ.push_back(n);
  }
  Label links = 0;
  Label empty = s;
  for (int n = 1; n <= L; ++n) empty &= ~(Label{1} << QubitLayout::matter(n));
  for (int n = 1; n <= L; ++n) {
    if (bit(s, QubitLayout::link(n))) links |= Label{1} << QubitLayout::link(next_site(n, L));
  }
  // Sign of xi_{n1}^dag ... xi_{nk}^dag |0> relative to the bit label.
  Word build_s;
  for (int n : occ) build_s.push_back({Prim::Create, n});
  const cplx ps = apply_word(build_s, empty, L)->amp;

  Word filled;
  for (int n = 1; n <= L; ++n) filled.push_back({Prim::Create, n});
  auto st = apply_word(filled, links, L);
  cplx amp = st->amp;
  Label t = st->state;
  for (auto it = occ.rbegin(); it != occ.rend(); ++it) {
    const auto r = apply_word({{Prim::Destroy, next_site(*it, L)}}, t, L);
    amp *= r->amp * ((*it % 2 == 0) ? 1.0 : -1.0);
    t = r->state;
  }
  return {amp / ps, t};
}

}  // namespace

SparseOperator build_charge_conjugation(const ModelParams& p, const Basis& basis) {
  if (basis.L() != p.L) throw std::invalid_argument("basis/params L mismatch");
  std::vector<Triplet> t;
  for (std::int64_t j = 0; j < basis.dim(); ++j) {
    const auto r = conjugate_state(basis.state(j), p.L);
    const std::int64_t i = basis.index_of(r.state);
    if (i < 0) throw std::logic_error("charge conjugation leaves the basis");
    t.push_back({i, j, r.amp});
  }
  return {basis.kind(), basis.dim(), std::move(t)};
}

SparseOperator build_gauss_generator(int n, const Basis& basis) {
  const int L = basis.L();
  if (n < 1 || n > L) throw std::out_of_range("gauss generator site");
  VecC d(basis.dim());
  const int prev = n == 1 ? L : n - 1;
  const int sign = (n % 2 == 1) ? 1 : -1;
  for (std::int64_t i = 0; i < basis.dim(); ++i) {
    const Label s = basis.state(i);
    d[i] = static_cast<double>(sign * x_value(s, prev) * sigma_z(s, n) * x_value(s, n));
  }
  return SparseOperator::diagonal(basis.kind(), d);
}

std::vector<int> wilson_links(int n, int l, int L) {
  if (n == l) throw std::invalid_argument("wilson_links: n == l");
  if (n < 1 || l < 1 || n > L || l > L) throw std::out_of_range("wilson_links");
  const int a = std::min(n, l);
  const int b = std::max(n, l);
  std::vector<int> links;
  if (b - a <= L / 2) {
    for (int r = a; r < b; ++r) links.push_back(r);
  } else {
    for (int r = 1; r < a; ++r) links.push_back(r);
    for (int r = b; r <= L; ++r) links.push_back(r);
  }
  return links;
}

SparseOperator wilson_line(int n, int l, const Basis& basis) {
  Word w;
  for (int r : wilson_links(n, l, basis.L())) w.push_back({Prim::LinkZ, r});
  return build_operator(basis, {{1.0, w}});
}

Word meson_word(int n, int l, int L) {
  if (n == l) return {{Prim::Number, n}};
  Word w{{Prim::Create, n}};
  for (int r : wilson_links(n, l, L)) w.push_back({Prim::LinkZ, r});
  w.push_back({Prim::Destroy, l});
  return w;
}

Word direct_dressed_word(int n, int l) {
  if (n == l) return {{Prim::Number, n}};
  Word w{{Prim::Create, n}};
  for (int r = std::min(n, l); r < std::max(n, l); ++r) w.push_back({Prim::LinkZ, r});
  w.push_back({Prim::Destroy, l});
  return w;
}

SparseOperator meson_operator(int n, int l, const Basis& basis) {
  return build_operator(basis, {{1.0, meson_word(n, l, basis.L())}});
}

VecC meson_basis_vector(int n, int l, const VecC& ground, const Basis& basis) {
  return apply_terms({{1.0, meson_word(n, l, basis.L())}}, ground, basis);
}

Label strong_coupling_vacuum(int L) {
  Label s = 0;
  for (int n = 1; n <= L; ++n) {
    if (n % 2 == 1) s |= Label{1} << QubitLayout::matter(n);
    s |= Label{1} << QubitLayout::link(n);
  }
  return s;
}

VecC embed_in_full(const VecC& psi, const Basis& sector, const Basis& full) {
  VecC out = VecC::Zero(full.dim());
  for (std::int64_t i = 0; i < sector.dim(); ++i) {
    out[full.index_of(sector.state(i))] = psi[i];
  }
  return out;
}

}  // namespace z2m
