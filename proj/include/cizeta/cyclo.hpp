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

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "cizeta/counting.hpp"
#include "cizeta/zeta.hpp"

namespace cizeta {

// Element of Z[zeta_p] in the basis 1, zeta, ..., zeta^{p-2} with
// zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
struct CycInt {
  std::vector<mpz_class> c;  // length p - 1
  bool operator==(const CycInt&) const = default;
};

class CycRing {
 public:
  explicit CycRing(uint64_t p);

  uint64_t p() const { return p_; }
  CycInt zero() const { return CycInt{std::vector<mpz_class>(p_ - 1, 0)}; }
  CycInt from_int(const mpz_class& n) const;
  CycInt zeta_pow(uint64_t t) const;  // zeta^t, any t
  CycInt add(const CycInt& a, const CycInt& b) const;
  CycInt sub(const CycInt& a, const CycInt& b) const;
  CycInt mul(const CycInt& a, const CycInt& b) const;
  bool is_zero(const CycInt& a) const;
  // rational integers are the sublattice with all basis coords past the
  // constant equal (they arise from c + m*(zeta^0+...+zeta^{p-2}) shapes
  // only via m = 0 in this basis, so: coords 1..p-2 all zero)
  bool is_rational(const CycInt& a) const;
  mpz_class rational_value(const CycInt& a) const;  // throws if not rational

 private:
  uint64_t p_;
};

// Additive character Psi(x) = zeta_p^{Tr(x)}, absolute trace to F_p.
CycInt character(const CycRing& ring, const ExtHandle& E, const ExtElem& x);

// Exponential sum S_m over all affine (x, y) in F_{q^m}^{n+1+r} of
// Psi(Tr(sum_j y_j f_j(x))).  Fast mode sums the inner y-loop in closed
// form; naive mode enumerates (x, y) pairs outright.
CycInt exp_sum(const VarietySpec& spec, unsigned m, uint64_t budget = kDefaultBudget,
               bool naive = false);

// Checks exp(sum S_m t^m / m)^{(-1)^{n+r}} against
// (1 - q^{n+1} t)^{(-1)^{n+r-1}} P(q^r t) / P(q^{r+1} t) through degree T;
// throws MismatchAtDegree on the first differing coefficient.  S_m must be
// rational integers.
void l_function_check(const VarietySpec& spec, const std::vector<mpz_class>& S,
                      const PPoly& P, unsigned T);

}  // namespace cizeta
