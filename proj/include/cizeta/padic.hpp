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

#include <climits>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "cizeta/fp.hpp"

namespace cizeta {

// Truncated arithmetic in Z_p[zeta_p], the ring of integers of the totally
// ramified degree-(p-1) extension Q_p(zeta_p).  Elements are stored on the
// power basis 1, zeta, ..., zeta^{p-2} with coordinates in Z/p^nwork; for
// p = 2 the ring degenerates to Z_2 (zeta = -1, a single coordinate).
//
// lambda = zeta - 1 is a uniformizer with ord_p(lambda) = 1/(p-1); all
// valuations below are reported in lambda-units (1/(p-1) of a p-unit) and
// are exact for elements whose representative is nonzero mod p^nwork.
using PVec = std::vector<uint64_t>;

class PadicCtx {
 public:
  // Throws CompositeP for non-prime p and TooLarge when p^nwork >= 2^62.
  PadicCtx(unsigned p, int nwork);

  unsigned p() const { return p_; }
  int nwork() const { return nwork_; }
  uint64_t modulus() const { return pn_; }
  unsigned dim() const { return p_ - 1; }

  PVec zero() const { return PVec(dim(), 0); }
  PVec one() const;
  PVec from_int(long v) const;
  // Reduces a p-integral rational; throws DivisionNotExact when p divides
  // the denominator.
  PVec from_mpq(const mpq_class& v) const;

  bool is_zero(const PVec& x) const;
  // Agreement of two elements modulo p^digits (coordinate-wise).
  bool equal_mod(const PVec& x, const PVec& y, int digits) const;

  PVec add(const PVec& a, const PVec& b) const;
  PVec sub(const PVec& a, const PVec& b) const;
  PVec neg(const PVec& a) const;
  PVec mul(const PVec& a, const PVec& b) const;
  PVec scale(uint64_t c, const PVec& a) const;
  PVec pow(PVec base, unsigned long e) const;

  PVec zeta() const;
  PVec lambda() const;
  const PVec& lambda_pow(long j) const;  // j >= 0, cached

  // Coordinates on the basis 1, lambda, ..., lambda^{p-2}.
  PVec lambda_coords(const PVec& x) const;

  static constexpr long kOrdInf = LONG_MAX;
  // Valuation in lambda-units (ord_p * (p-1)); kOrdInf when the
  // representative vanishes mod p^nwork (true valuation >= nwork*(p-1)).
  long ord_lambda(const PVec& x) const;
  mpq_class ord_p(const PVec& x) const;  // throws on zero representative

  // Reduction modulo the maximal ideal (lambda); zeta == 1 mod lambda, so
  // this is the coordinate sum mod p.
  uint64_t residue_mod_lambda(const PVec& x) const;
  // Residue of x / lambda^j modulo lambda; requires ord_lambda(x) >= j.
  uint64_t residue_at(const PVec& x, long j) const;
  // c * lambda^j.
  PVec monomial(uint64_t c, long j) const;

  // Coordinate-wise exact division by p^k; throws DivisionNotExact.  The
  // quotient representative is exact only modulo p^{nwork-k}; callers keep
  // guard digits for this.
  PVec div_exact_p(const PVec& x, unsigned k = 1) const;
  // Inverse of a unit (residue nonzero mod lambda); throws DivisionNotExact.
  PVec invert_unit(const PVec& u) const;
  // Multiplicative (Teichmueller) lift of c mod p into Z_p.
  PVec teichmuller(uint64_t c) const;

  // gamma: the root of sum_i t^{p^i}/p^i with ord_p = 1/(p-1) (computed on
  // construction); nu = lambda/gamma and u_lambda = lambda^{p-1}/p are units.
  const PVec& gamma() const { return gamma_; }
  const PVec& nu() const { return nu_; }
  const PVec& u_lambda() const { return u_lambda_; }

 private:
  friend PVec gamma_root(const PadicCtx& ctx);

  uint64_t addm(uint64_t a, uint64_t b) const;
  uint64_t subm(uint64_t a, uint64_t b) const;
  uint64_t mulm(uint64_t a, uint64_t b) const;

  unsigned p_ = 0;
  int nwork_ = 0;
  uint64_t pn_ = 0;
  std::vector<std::vector<uint64_t>> binom_;  // Pascal table mod p^nwork
  PVec gamma_, nu_, u_lambda_;
  uint64_t u_lambda_res_inv_ = 0;  // (u_lambda mod lambda)^{-1} in F_p
  mutable std::vector<PVec> lambda_pows_;
};

// Searches the p-1 candidates c*lambda (c a Teichmueller unit) and refines
// by Newton iteration; throws NoRootFound if none converges.
PVec gamma_root(const PadicCtx& ctx);

// Coefficients lambda_0..lambda_{i_max} of the splitting function
// theta(t) = E(gamma t), E the Artin-Hasse exponential.  Satisfies
// ord_p(lambda_i) >= i/(p-1); throws PrecisionExhausted when that bound
// reaches the working precision.
std::vector<PVec> splitting_coeffs(const PadicCtx& ctx, int i_max);

// Partial sums gamma_l = sum_{i<=l} gamma^{p^i}/p^i, whose valuations grow
// like p^{l+1}/(p-1) - l - 1.
std::vector<PVec> gamma_partial_sums(const PadicCtx& ctx, int l_max);

}  // namespace cizeta
