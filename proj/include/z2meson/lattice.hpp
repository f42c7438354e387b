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
#include <optional>
#include <vector>

#include "z2meson/sparse.hpp"
#include "z2meson/types.hpp"

namespace z2m {

// Sites are numbered 1..L. Link n joins site n and n+1; link L wraps to 1.
struct ModelParams {
  int L = 6;
  double m = 0.1;
  double eps = 1.0;
  // Even L >= 4. Throws std::invalid_argument otherwise.
  void validate() const;
};

// Interleaved ordering f1 g1 f2 g2 ... fL gL.
//
// Bit conventions used everywhere in the library:
//   matter bit 1  = occupied site (sigma^z = +1);
//   link bit 0/1  = electric field X_g = +1/-1.
// Links are thus stored in the X eigenbasis: X_g is diagonal and Z_g flips
// the bit. The circuit simulator works in the computational (Z) basis and
// converts with a Hadamard on every link qubit.
struct QubitLayout {
  int L;
  int num_qubits() const { return 2 * L; }
  static constexpr int matter(int n) { return 2 * (n - 1); }
  static constexpr int link(int n) { return 2 * (n - 1) + 1; }
  int wrap(int n) const { return ((n - 1) % L + L) % L + 1; }
};

inline bool bit(Label s, int q) { return ((s >> q) & 1U) != 0; }
inline bool occupied(Label s, int n) { return bit(s, QubitLayout::matter(n)); }
inline int sigma_z(Label s, int n) { return occupied(s, n) ? 1 : -1; }
inline int x_value(Label s, int n) { return bit(s, QubitLayout::link(n)) ? -1 : 1; }

class Basis {
 public:
  static Basis full(int L);
  static Basis sector(int L);

  BasisKind kind() const { return kind_; }
  int L() const { return L_; }
  std::int64_t dim() const { return dim_; }
  Label state(std::int64_t i) const {
    return kind_ == BasisKind::Full ? static_cast<Label>(i) : states_[i];
  }
  const std::vector<Label>& states() const { return states_; }
  // -1 when the label is outside the basis.
  std::int64_t index_of(Label s) const;

 private:
  BasisKind kind_ = BasisKind::Sector;
  int L_ = 0;
  std::int64_t dim_ = 0;
  std::vector<Label> states_;
};

// Gauss law (-1)^{n+1} X_{g,n-1} sigma^z_n X_{g,n} = +1 for every n.
bool satisfies_gauss(Label s, int L);
int matter_weight(Label s, int L);

// Sorted list of Gauss-law, half-filled labels. Accepts any even L >= 2.
std::vector<Label> enumerate_sector(int L);

// --- operator words -------------------------------------------------------

enum class Prim : std::uint8_t {
  Create,   // xi_n^dagger with Jordan-Wigner string
  Destroy,  // xi_n
  LinkZ,    // Z_{g,n}: flips link n
  LinkX,    // X_{g,n}: diagonal +-1
  Number,   // xi_n^dagger xi_n
  SigmaZ,   // 2 n_n - 1
};

struct Factor {
  Prim kind;
  int site;
};

// Product of factors; the last one acts first.
using Word = std::vector<Factor>;

struct Term {
  cplx coef;
  Word word;
};

struct WordResult {
  cplx amp;
  Label state;
};

std::optional<WordResult> apply_word(const Word& w, Label s, int L);

// Builds sum of terms on a basis. A term that leaves a sector basis raises
// std::logic_error.
SparseOperator build_operator(const Basis& basis, const std::vector<Term>& terms);

// --- model operators ------------------------------------------------------

std::vector<Term> kinetic_terms(int L);
std::vector<Term> mass_terms(const ModelParams& p);
std::vector<Term> electric_terms(const ModelParams& p);
// Per-site piece H_n of the Trotter splitting (hop n->n+1, staggered mass
// shared symmetrically between both sites, electric field on link n).
std::vector<Term> local_terms(const ModelParams& p, int n);

struct HamiltonianParts {
  SparseOperator kinetic;
  SparseOperator mass;
  SparseOperator electric;
  SparseOperator total;
};

SparseOperator build_hamiltonian(const ModelParams& p, const Basis& basis);
HamiltonianParts build_hamiltonian_parts(const ModelParams& p, const Basis& basis);

SparseOperator build_charge_conjugation(const ModelParams& p, const Basis& basis);

// Diagonal Gauss generator G_n on the basis.
SparseOperator build_gauss_generator(int n, const Basis& basis);

// Links on the shorter cyclic path between sites n and l; the direct path
// wins ties. Symmetric in (n, l). Throws on n == l.
std::vector<int> wilson_links(int n, int l, int L);
SparseOperator wilson_line(int n, int l, const Basis& basis);

// M_{nl} = xi_n^dagger W_{n,l} xi_l (number operator for n == l).
Word meson_word(int n, int l, int L);
// xi_n^dagger (prod of Z_g on links min..max-1) xi_l: the dressing that the
// Givens circuits realize, cut at link L.
Word direct_dressed_word(int n, int l);

SparseOperator meson_operator(int n, int l, const Basis& basis);
VecC apply_terms(const std::vector<Term>& terms, const VecC& psi, const Basis& basis);
VecC meson_basis_vector(int n, int l, const VecC& ground, const Basis& basis);

// Strong-coupling vacuum: odd sites filled, all links X = -1.
Label strong_coupling_vacuum(int L);

// Embeds a sector vector into the full 2^{2L} space (same link convention).
VecC embed_in_full(const VecC& psi, const Basis& sector, const Basis& full);

}  // namespace z2m
