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

#include "cizeta/jacobian.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace cizeta {

bool CokernelSolver::add_column(const std::vector<FqElem>& col) {
  const FieldCtx& F = *F_;
  size_t my_index = ncols_++;
  std::vector<FqElem> v = col;
  std::vector<FqElem> comb(ncols_, F.zero());
  comb.back() = F.one();
  // combs recorded earlier are shorter; treat missing tail as zero
  for (size_t k = 0; k < echelon_.size(); ++k) {
    FqElem c = v[pivots_[k]];
    if (F.is_zero(c)) continue;
    for (size_t i = 0; i < nrows_; ++i)
      v[i] = F.sub(v[i], F.mul(c, echelon_[k][i]));
    for (size_t j = 0; j < combs_[k].size(); ++j)
      comb[j] = F.sub(comb[j], F.mul(c, combs_[k][j]));
  }
  size_t piv = nrows_;
  for (size_t i = 0; i < nrows_; ++i)
    if (!F.is_zero(v[i])) {
      piv = i;
      break;
    }
  if (piv == nrows_) return false;
  FqElem inv = F.inv(v[piv]);
  for (auto& x : v) x = F.mul(x, inv);
  for (auto& x : comb) x = F.mul(x, inv);
  echelon_.push_back(std::move(v));
  pivots_.push_back(piv);
  combs_.push_back(std::move(comb));
  (void)my_index;
  return true;
}

std::vector<size_t> CokernelSolver::nonpivot_rows() const {
  std::vector<bool> is_pivot(nrows_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<size_t> out;
  for (size_t i = 0; i < nrows_; ++i)
    if (!is_pivot[i]) out.push_back(i);
  return out;
}

void CokernelSolver::decompose(std::vector<FqElem> v, std::vector<FqElem>& coords,
                               std::vector<FqElem>& eta) const {
  const FieldCtx& F = *F_;
  eta.assign(ncols_, F.zero());
  for (size_t k = 0; k < echelon_.size(); ++k) {
    FqElem c = v[pivots_[k]];
    if (F.is_zero(c)) continue;
    for (size_t i = 0; i < nrows_; ++i)
      v[i] = F.sub(v[i], F.mul(c, echelon_[k][i]));
    for (size_t j = 0; j < combs_[k].size(); ++j)
      eta[j] = F.add(eta[j], F.mul(c, combs_[k][j]));
  }
  coords = std::move(v);
}

std::vector<FqElem> CokernelSolver::solve(const std::vector<FqElem>& v) const {
  std::vector<FqElem> coords, eta;
  decompose(v, coords, eta);
  for (const auto& c : coords)
    if (!F_->is_zero(c)) throw SolveFailed("linear system is inconsistent");
  return eta;
}

bool CokernelSolver::in_image(const std::vector<FqElem>& v) const {
  std::vector<FqElem> coords, eta;
  decompose(v, coords, eta);
  for (const auto& c : coords)
    if (!F_->is_zero(c)) return false;
  return true;
}

namespace {

// All vectors in N^len with the given sum, lexicographically ascending.
void compositions(unsigned len, long total, std::vector<uint16_t>& cur,
                  std::vector<std::vector<uint16_t>>& out) {
  if (total < 0) return;
  if (cur.size() + 1 == len) {
    if (total > kMaxExponent) return;
    cur.push_back(static_cast<uint16_t>(total));
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long v = 0; v <= total; ++v) {
    cur.push_back(static_cast<uint16_t>(v));
    compositions(len, total - v, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<uint16_t>> compositions(unsigned len, long total) {
  std::vector<std::vector<uint16_t>> out;
  if (len == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  std::vector<uint16_t> cur;
  compositions(len, total, cur, out);
  return out;
}

}  // namespace

std::vector<FormKey> enumerate_piece(const VarietySpec& spec, long e, unsigned k) {
  std::vector<FormKey> out;
  const unsigned slots = spec.slots();
  if (k > slots) return out;
  // iterate differential subsets by increasing mask
  for (uint32_t mask = 0; mask < (1u << slots); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != k) continue;
    unsigned l = 0, m = 0;
    long dy_degsum = 0;
    for (unsigned s = 0; s < slots; ++s) {
      if (!(mask & (1u << s))) continue;
      if (s <= spec.n)
        ++l;
      else {
        ++m;
        dy_degsum += spec.degrees[s - spec.n - 1];
      }
    }
    long bsum = e - static_cast<long>(m);
    if (bsum < 0) continue;
    for (const auto& yexp : compositions(spec.r, bsum)) {
      long asum = dy_degsum - static_cast<long>(l);
      for (unsigned j = 0; j < spec.r; ++j)
        asum += static_cast<long>(yexp[j]) * spec.degrees[j];
      if (asum < 0) continue;
      for (const auto& xexp : compositions(spec.n + 1, asum)) {
        FormKey key;
        key.xexp = xexp;
        key.yexp = yexp;
        key.diff = mask;
        out.push_back(std::move(key));
        if (out.size() > 500'000)
          throw BudgetExceeded("graded piece at weight " + std::to_string(e) +
                               " has too many monomial forms to enumerate");
      }
    }
  }
  return out;
}

std::vector<FqElem> form_to_vector(const VarietySpec& spec,
                                   const std::vector<FormKey>& targets,
                                   const BiForm& f) {
  std::map<FormKey, size_t> index;
  for (size_t i = 0; i < targets.size(); ++i) index.emplace(targets[i], i);
  std::vector<FqElem> v(targets.size(), spec.field.zero());
  for (const auto& [key, c] : f.terms) {
    auto it = index.find(key);
    if (it == index.end())
      throw Error("form term outside the enumerated piece: " +
                  monomial_form_to_string(spec, key));
    v[it->second] = c;
  }
  return v;
}

BoundaryPiece boundary_piece(const VarietySpec& spec, long e) {
  BoundaryPiece piece{e,
                      enumerate_piece(spec, e, spec.n + spec.r + 1),
                      enumerate_piece(spec, e - 1, spec.n + spec.r),
                      CokernelSolver(spec.field, 0)};
  // Dense elimination costs ~ rank * |targets| per column; refuse pieces
  // whose worst case would dominate the run instead of grinding on them.
  const double work = (double)piece.targets.size() *
                      (double)piece.targets.size() *
                      (double)piece.sources.size();
  if (work > 5e9)
    throw BudgetExceeded("graded piece at weight " + std::to_string(e) +
                         " exceeds the elimination work limit (" +
                         std::to_string(piece.targets.size()) + " x " +
                         std::to_string(piece.sources.size()) + ")");
  piece.solver = CokernelSolver(spec.field, piece.targets.size());
  for (const auto& src : piece.sources) {
    BiForm w;
    add_term(w, spec, src, spec.field.one());
    BiForm img = wedge_dF(spec, w);
    piece.solver.add_column(form_to_vector(spec, piece.targets, img));
  }
  return piece;
}

std::vector<std::vector<FqElem>> boundary_matrix(const VarietySpec& spec, long e) {
  auto targets = enumerate_piece(spec, e, spec.n + spec.r + 1);
  auto sources = enumerate_piece(spec, e - 1, spec.n + spec.r);
  std::vector<std::vector<FqElem>> M(targets.size(),
                                     std::vector<FqElem>(sources.size(), spec.field.zero()));
  for (size_t j = 0; j < sources.size(); ++j) {
    BiForm w;
    add_term(w, spec, sources[j], spec.field.one());
    auto col = form_to_vector(spec, targets, wedge_dF(spec, w));
    for (size_t i = 0; i < targets.size(); ++i) M[i][j] = col[i];
  }
  return M;
}

HodgeData hodge_numbers(const VarietySpec& spec, bool skip_vanishing_check) {
  spec.validate();
  HodgeData data;
  data.h.assign(spec.n + 1, 0);
  data.exceptional = spec.exceptional_case();
  if (data.exceptional) data.exceptional_e = (spec.n + spec.r + 1) / 2;

  for (long e = spec.r; e <= static_cast<long>(spec.n); ++e) {
    auto piece = boundary_piece(spec, e);
    GradedPieceReport rep;
    rep.e = e;
    rep.target_monomials = piece.targets;
    rep.boundary_rank = piece.solver.rank();
    rep.cokernel_dim = piece.targets.size() - rep.boundary_rank;
    rep.exceptional = data.exceptional && e == data.exceptional_e;
    if (!rep.exceptional)  // exceptional basis needs tau; see monomial_basis
      for (auto row : piece.solver.nonpivot_rows())
        rep.basis.push_back(piece.targets[row]);
    long h = static_cast<long>(rep.cokernel_dim) - (rep.exceptional ? 1 : 0);
    if (h < 0)
      throw NotSmoothSuspected("cokernel at the exceptional weight is empty; "
                               "the torsion class has nowhere to live");
    data.h[e] = h;
    data.pieces.push_back(std::move(rep));
  }

  if (!skip_vanishing_check) {
    // necessary smoothness condition: pieces vanish for n < e <= n + max d
    for (long e = spec.n + 1; e <= static_cast<long>(spec.n + spec.max_degree()); ++e) {
      auto piece = boundary_piece(spec, e);
      if (piece.targets.size() != piece.solver.rank())
        throw NotSmoothSuspected(
            "nonvanishing cohomology at weight e = " + std::to_string(e) +
            " > n; the variety is likely singular or not a complete intersection");
    }
  }
  return data;
}

std::vector<FormKey> monomial_basis(const VarietySpec& spec, long e,
                                    const TorsionClass* tau) {
  auto piece = boundary_piece(spec, e);
  bool exceptional = spec.exceptional_case() && e == (spec.n + spec.r + 1) / 2;
  if (!exceptional) {
    std::vector<FormKey> basis;
    for (auto row : piece.solver.nonpivot_rows()) basis.push_back(piece.targets[row]);
    return basis;
  }
  if (tau == nullptr)
    throw ExceptionalClassNeeded("the exceptional weight basis requires tau");
  // force tau into the spanning set, then take the remaining non-pivots
  CokernelSolver aug = piece.solver;
  if (!aug.add_column(form_to_vector(spec, piece.targets, tau->tau)))
    throw SolveFailed("tau lies in the boundary image (bug)");
  std::vector<FormKey> basis;
  for (auto row : aug.nonpivot_rows()) basis.push_back(piece.targets[row]);
  return basis;
}

namespace {

// Solve theta(x) = rhs with x in the span of the bidegree-(0,e) k-forms.
// Deterministic least-index particular solution.
BiForm solve_theta_system(const VarietySpec& spec, long e, unsigned k,
                          const BiForm& rhs) {
  auto sources = enumerate_piece(spec, e, k);
  auto targets = enumerate_piece(spec, e, k - 1);
  CokernelSolver solver(spec.field, targets.size());
  for (const auto& src : sources) {
    BiForm w;
    add_term(w, spec, src, spec.field.one());
    solver.add_column(form_to_vector(spec, targets, theta(spec, w)));
  }
  std::vector<FqElem> x;
  try {
    x = solver.solve(form_to_vector(spec, targets, rhs));
  } catch (const SolveFailed&) {
    throw SolveFailed("theta system at weight " + std::to_string(e) +
                      ", form degree " + std::to_string(k) +
                      " is inconsistent (bug: solvability is guaranteed)");
  }
  BiForm out;
  for (size_t j = 0; j < sources.size(); ++j)
    add_term(out, spec, sources[j], x[j]);
  return out;
}

}  // namespace

TorsionClass exceptional_class(const VarietySpec& spec) {
  spec.validate();
  if (!spec.exceptional_case())
    throw InputError("exceptional class requires p | d_1...d_r and n+r odd");
  const unsigned top = spec.n + spec.r + 1;
  const unsigned estar = top / 2;

  TorsionClass tc;
  BiForm etabar = differential_of_F(spec);
  tc.etabars.push_back(etabar);
  for (unsigned k = 1; k + 1 <= estar; ++k) {
    BiForm zeta = solve_theta_system(spec, k, 2 * k, etabar);
    tc.zetas.push_back(zeta);
    etabar = wedge_dF(spec, zeta);
    tc.etabars.push_back(etabar);
  }
  tc.tau = solve_theta_system(spec, estar, top, etabar);

  // contract checks: theta(tau) reproduces etabar exactly, and the class of
  // tau in the top cokernel is nonzero
  if (!(theta(spec, tc.tau) == etabar))
    throw SolveFailed("theta(tau) != etabar (bug)");
  auto piece = boundary_piece(spec, estar);
  if (piece.solver.in_image(form_to_vector(spec, piece.targets, tc.tau)))
    throw SolveFailed("tau class vanishes in the cokernel (bug)");
  return tc;
}

}  // namespace cizeta
