// Copyright 2026 the cizeta authors
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

#include <cstddef>
#include <vector>

#include "cizeta/biform.hpp"

namespace cizeta {

// Linear algebra over F_q with deterministic pivoting (first nonzero row in
// order).  Columns are fed one at a time; the solver records, for every
// echelon column, the combination of original columns that produced it, so
// membership questions come with explicit preimages.
class CokernelSolver {
 public:
  CokernelSolver(const FieldCtx& F, size_t nrows) : F_(&F), nrows_(nrows) {}

  // Feeds one column of the matrix; returns true if it increased the rank.
  bool add_column(const std::vector<FqElem>& col);

  size_t rank() const { return echelon_.size(); }
  size_t nrows() const { return nrows_; }
  size_t ncols() const { return ncols_; }
  const std::vector<size_t>& pivot_rows() const { return pivots_; }
  std::vector<size_t> nonpivot_rows() const;

  // Writes v = sum_t coords[t] e_t + M eta with coords supported on
  // non-pivot rows (full length nrows, zero at pivots).  eta has length
  // ncols and is the deterministic least-index particular preimage.
  void decompose(std::vector<FqElem> v, std::vector<FqElem>& coords,
                 std::vector<FqElem>& eta) const;

  // Solves M x = v exactly; throws SolveFailed when v is not in the image.
  std::vector<FqElem> solve(const std::vector<FqElem>& v) const;

  bool in_image(const std::vector<FqElem>& v) const;

 private:
  const FieldCtx* F_;
  size_t nrows_;
  size_t ncols_ = 0;
  std::vector<std::vector<FqElem>> echelon_;  // normalized, pivot entry 1
  std::vector<size_t> pivots_;
  std::vector<std::vector<FqElem>> combs_;  // original-column combinations
};

struct GradedPieceReport {
  long e = 0;
  std::vector<FormKey> target_monomials;  // (0,e) top-degree monomial forms
  size_t boundary_rank = 0;
  size_t cokernel_dim = 0;
  std::vector<FormKey> basis;  // the xi_l^{(e)}
  bool exceptional = false;
};

struct TorsionClass {
  BiForm tau;                   // (n+r+1)-form, bidegree (0,(n+r+1)/2)
  std::vector<BiForm> zetas;    // intermediate zeta_k
  std::vector<BiForm> etabars;  // etabar_1..etabar_{(n+r+1)/2}
};

// All monomial k-forms of bidegree (0, e), in a fixed graded-lex order
// (y-exponents graded-lex, then x-exponents lex, per differential subset).
std::vector<FormKey> enumerate_piece(const VarietySpec& spec, long e, unsigned k);

// Boundary data of the (0,e) top-degree piece: columns are wedge_dF images
// of the (0,e-1) (n+r)-forms expressed in the (0,e) monomial-form basis.
struct BoundaryPiece {
  long e = 0;
  std::vector<FormKey> targets;
  std::vector<FormKey> sources;
  CokernelSolver solver;
};
BoundaryPiece boundary_piece(const VarietySpec& spec, long e);

// Dense boundary matrix (targets x sources), mainly for oracle tests.
std::vector<std::vector<FqElem>> boundary_matrix(const VarietySpec& spec, long e);

// Coordinates of a top-degree form in a piece's target list; throws if a
// term falls outside the list.
std::vector<FqElem> form_to_vector(const VarietySpec& spec,
                                   const std::vector<FormKey>& targets,
                                   const BiForm& f);

struct HodgeData {
  std::vector<long> h;  // h[e] for e = 0..n (entries < r are zero)
  bool exceptional = false;
  long exceptional_e = -1;
  std::vector<GradedPieceReport> pieces;  // e = r..n
  long degree_P() const {
    long s = 0;
    for (auto v : h) s += v;
    return s;
  }
};

// h_e for e = r..n with the exceptional correction; also runs the
// necessary-vanishing audit for e in (n, n + max d].
HodgeData hodge_numbers(const VarietySpec& spec, bool skip_vanishing_check = false);

// Monomial basis of the (0,e) cokernel piece.  In the exceptional weight the
// basis is completed against tau (which must be supplied).
std::vector<FormKey> monomial_basis(const VarietySpec& spec, long e,
                                    const TorsionClass* tau = nullptr);

// Iterative construction of the torsion class via repeated theta-lifting.
TorsionClass exceptional_class(const VarietySpec& spec);

}  // namespace cizeta
