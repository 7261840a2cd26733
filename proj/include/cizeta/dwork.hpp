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

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cizeta/jacobian.hpp"
#include "cizeta/padic.hpp"
#include "cizeta/zeta.hpp"

namespace cizeta {

// Truncated Dwork-Frobenius machinery for a smooth complete intersection
// over a prime field F_p with p not dividing any degree.  The cohomology is
// computed in a weighted p-adic series ring: a top-degree form is a finite
// sum of monomials x^w y^z (all differential slots present) with scalars in
// Z_p[zeta_p]; a term of y-degree |z| carries the rational filtration level
//     ord_p(coefficient) - b * (|z| + r),
// where b sits strictly between 1/(p-1) and p/(p-1) (default: the interval
// midpoint).  Weight normalizations enter only through these exact rational
// level offsets; scalars never leave Z_p[zeta_p].

struct MonoKey {
  std::vector<uint16_t> u;  // x-exponents, length n+1
  std::vector<uint16_t> v;  // y-exponents, length r

  auto operator<=>(const MonoKey&) const = default;
};

// Coefficient series of a top-degree form (all dx, dy slots present).
using TopSeries = std::map<MonoKey, PVec>;

// A degree-(n+r) form: monomials tagged with the single absent slot
// (0..n for dx_i, n+1..n+r for dy_j).
struct EtaKey {
  unsigned missing = 0;
  MonoKey m;

  auto operator<=>(const EtaKey&) const = default;
};
using EtaSeries = std::map<EtaKey, PVec>;

struct ReduceResult {
  std::vector<PVec> coords;  // on the monomial basis, (e, l) order
  int iterations = 0;
  // Levels below which everything was peeled; residual influence on any
  // coordinate has p-adic valuation at least this.
  mpq_class certified_level;
  std::vector<mpq_class> level_trace;  // residual min-level per iteration
  // Total number of lambda pre-shifts the reduction needed (at least the
  // initial one); shifts beyond the first each cost 1/(p-1) of the final
  // precision certificate.
  long shift = 1;
};

struct FrobeniusMatrix {
  std::vector<long> basis_e;          // weight e of each basis element
  std::vector<FormKey> basis_keys;    // the monomial forms
  std::vector<std::vector<PVec>> raw; // raw[i][j]: column j over basis i
  // True matrix-entry valuation is ord_p(raw[i][j]) + b (e_j - e_i); per
  // column the minimum, as an exact rational (entries vanishing to working
  // precision are treated as above the certification level).
  std::vector<mpq_class> column_min_valuation;
  std::vector<bool> column_min_capped;  // true when every entry was cut off
  int certified_digits = 0;             // entries certified mod p^this
};

struct NewtonBoundResult {
  PolygonVerdict pre_limit = PolygonVerdict::Violation;  // vs p^{e b(p-1)/p}
  PolygonVerdict limit = PolygonVerdict::Violation;      // vs p^e (Thm bound)
  Polygon newton;  // of det(I - t alpha), with respect to ord_p
  std::vector<PVec> det_coeffs;  // det(I - t alpha), degree-ordered
};

class DworkEngine {
 public:
  // Requires spec.field prime (a = 1), p not dividing any d_j, smoothness is
  // the caller's responsibility.  precision = certified digit target N;
  // b_override must lie strictly inside (1/(p-1), p/(p-1)) when supplied.
  DworkEngine(const VarietySpec& spec, int precision,
              std::optional<mpq_class> b_override = std::nullopt,
              long vmax_override = 0);

  const PadicCtx& ring() const { return ring_; }
  const mpq_class& b() const { return b_; }
  int precision() const { return n_target_; }
  long vmax() const { return vmax_; }
  const std::vector<long>& basis_e() const { return basis_e_; }
  const std::vector<FormKey>& basis_keys() const { return basis_keys_; }
  const TopSeries& G() const { return G_; }

  // alpha applied to the raw basis monomial form: multiply the coefficient
  // by x_0..x_n y_1..y_r, multiply by G, push indices down by p, divide the
  // product monomial back out.  Truncated at the certification level.
  TopSeries frobenius_on_form(const FormKey& xi) const;

  // The unnormalized boundary (d + dH^) of an (n+r)-form, as a top form.
  TopSeries apply_boundary(const EtaSeries& eta) const;

  // Writes omega = sum c_{e,l} xi_l^{(e)} + boundary image, peeling one
  // filtration level per iteration (the mod-p leading behavior of the
  // boundary is dF^, solved with the Jacobian-module cokernel machinery).
  ReduceResult reduce_to_basis(TopSeries omega) const;

  FrobeniusMatrix frobenius_matrix() const;

  // Exact filtration level of a top-series term.
  mpq_class level_of(const MonoKey& k, const PVec& c) const;

 private:
  TopSeries prune(TopSeries s, const mpq_class& cutoff) const;
  TopSeries apply_boundary(const EtaSeries& eta, const mpq_class& cutoff) const;
  const BoundaryPiece& piece(long e) const;
  PVec div_lambda(const PVec& x) const;

  VarietySpec spec_;
  int n_target_ = 0;
  mpq_class b_;
  mpq_class stop_level_;
  long vmax_ = 0;   // y-degree truncation of G
  long zmax_ = 0;   // output y-degree horizon
  PadicCtx ring_;
  PVec inv_u_lambda_;
  TopSeries G_;
  std::vector<long> basis_e_;
  std::vector<FormKey> basis_keys_;
  // dH/dt per slot: monomial shifts with scalar coefficients.
  struct DHTerm {
    std::vector<uint16_t> du, dv;
    PVec c;
  };
  std::vector<std::vector<DHTerm>> dh_;
  mutable std::map<long, BoundaryPiece> pieces_;
};

// Coefficients of det(I - t M) for a square matrix over Z_p[zeta_p]
// (division-free Samuelson-Berkowitz), degree-ordered from t^0.
std::vector<PVec> det_one_minus_t(const PadicCtx& ctx,
                                  const std::vector<std::vector<PVec>>& m);

// Newton polygon of det(I - t alpha) against the pre-limit bound
// prod (1 - p^{e b (p-1)/p} t)^{h_e} and the limit bound
// prod (1 - p^e t)^{h_e}.  Throws PrecisionInsufficient when a nonzero
// coefficient cannot be certified at the working precision.
NewtonBoundResult newton_bound_check(const DworkEngine& eng,
                                     const FrobeniusMatrix& fm,
                                     const std::vector<long>& h);

}  // namespace cizeta
