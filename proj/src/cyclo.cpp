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

#include "cizeta/cyclo.hpp"

#include <string>

namespace cizeta {

CycRing::CycRing(uint64_t p) : p_(p) {
  if (!is_prime_u64(p)) throw CompositeP("p must be prime");
}

CycInt CycRing::from_int(const mpz_class& n) const {
  CycInt a = zero();
  a.c[0] = n;
  return a;
}

CycInt CycRing::zeta_pow(uint64_t t) const {
  t %= p_;
  CycInt a = zero();
  if (t < p_ - 1) {
    a.c[t] = 1;
  } else {
    for (auto& x : a.c) x = -1;  // zeta^{p-1}
  }
  return a;
}

CycInt CycRing::add(const CycInt& a, const CycInt& b) const {
  CycInt z = a;
  for (size_t i = 0; i < z.c.size(); ++i) z.c[i] += b.c[i];
  return z;
}

CycInt CycRing::sub(const CycInt& a, const CycInt& b) const {
  CycInt z = a;
  for (size_t i = 0; i < z.c.size(); ++i) z.c[i] -= b.c[i];
  return z;
}

CycInt CycRing::mul(const CycInt& a, const CycInt& b) const {
  // multiply as polynomials, then fold zeta^k for k >= p-1 using
  // zeta^{p-1} = -(1 + ... + zeta^{p-2}) (equivalently zeta^p = 1)
  std::vector<mpz_class> prod(2 * (p_ - 1) - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) prod[i + j] += a.c[i] * b.c[j];
  }
  CycInt z = zero();
  for (size_t k = 0; k < prod.size(); ++k) {
    size_t e = k % p_;
    if (e < p_ - 1)
      z.c[e] += prod[k];
    else
      for (auto& x : z.c) x -= prod[k];
  }
  return z;
}

bool CycRing::is_zero(const CycInt& a) const {
  for (const auto& x : a.c)
    if (x != 0) return false;
  return true;
}

bool CycRing::is_rational(const CycInt& a) const {
  for (size_t i = 1; i < a.c.size(); ++i)
    if (a.c[i] != 0) return false;
  return true;
}

mpz_class CycRing::rational_value(const CycInt& a) const {
  if (!is_rational(a))
    throw NonIntegralRelation("cyclotomic integer is not rational");
  return a.c[0];
}

CycInt character(const CycRing& ring, const ExtHandle& E, const ExtElem& x) {
  return ring.zeta_pow(E.trace_to_prime(x));
}

CycInt exp_sum(const VarietySpec& spec, unsigned m, uint64_t budget, bool naive) {
  // no validate() here: the sum is well defined for any n, r >= 1, and the
  // toy cases with r > n are useful fixtures
  const uint64_t q = spec.field.size();
  __uint128_t cost = 1;
  unsigned vars = naive ? spec.n + 1 + spec.r : spec.n + 1;
  for (unsigned i = 0; i < m * vars; ++i) {
    cost *= q;
    if (cost > budget) throw BudgetExceeded("exp_sum enumeration over budget");
  }

  ExtHandle E(spec.field, m);
  CycRing ring(spec.field.p());
  const uint64_t Q = E.size();
  uint64_t total_x = 1;
  for (unsigned i = 0; i <= spec.n; ++i) total_x *= Q;

  // q^{mr} as the closed-form inner sum value
  mpz_class qmr = 1;
  for (unsigned i = 0; i < m * spec.r; ++i) qmr *= static_cast<unsigned long>(q);

  CycInt S = ring.zero();
  std::vector<ExtElem> x(spec.n + 1);
  std::vector<ExtElem> fx(spec.r);
  for (uint64_t it = 0; it < total_x; ++it) {
    uint64_t rest = it;
    for (unsigned i = 0; i <= spec.n; ++i) {
      x[i] = E.element_at(rest % Q);
      rest /= Q;
    }
    for (unsigned j = 0; j < spec.r; ++j) {
      ExtElem acc = E.zero();
      for (const auto& [e, c] : spec.polys[j].terms) {
        ExtElem term = E.embed(c);
        for (unsigned i = 0; i <= spec.n; ++i)
          if (e[i]) term = E.mul(term, E.pow(x[i], e[i]));
        acc = E.add(acc, term);
      }
      fx[j] = acc;
    }
    if (!naive) {
      bool all_zero = true;
      for (const auto& v : fx)
        if (!E.is_zero(v)) {
          all_zero = false;
          break;
        }
      if (all_zero) S = ring.add(S, ring.from_int(qmr));
      continue;
    }
    // naive cross-check mode: enumerate y outright
    uint64_t total_y = 1;
    for (unsigned j = 0; j < spec.r; ++j) total_y *= Q;
    for (uint64_t yt = 0; yt < total_y; ++yt) {
      uint64_t yr = yt;
      ExtElem val = E.zero();
      for (unsigned j = 0; j < spec.r; ++j) {
        val = E.add(val, E.mul(E.element_at(yr % Q), fx[j]));
        yr /= Q;
      }
      S = ring.add(S, character(ring, E, val));
    }
  }
  return S;
}

namespace {

std::vector<mpq_class> series_exp(const std::vector<mpq_class>& s, long D) {
  std::vector<mpq_class> e(D + 1, 0);
  e[0] = 1;
  for (long k = 1; k <= D; ++k) {
    mpq_class acc = 0;
    for (long j = 1; j <= k; ++j) acc += mpq_class(j) * s[j] * e[k - j];
    e[k] = acc / k;
  }
  return e;
}

// 1/f for a series with constant term 1
std::vector<mpq_class> series_inv(const std::vector<mpq_class>& f, long D) {
  std::vector<mpq_class> g(D + 1, 0);
  g[0] = 1;
  for (long k = 1; k <= D; ++k) {
    mpq_class acc = 0;
    for (long j = 1; j <= k; ++j)
      if (j < static_cast<long>(f.size())) acc += f[j] * g[k - j];
    g[k] = -acc;
  }
  return g;
}

std::vector<mpq_class> series_mul(const std::vector<mpq_class>& a,
                                  const std::vector<mpq_class>& b, long D) {
  std::vector<mpq_class> c(D + 1, 0);
  for (long i = 0; i <= D && i < static_cast<long>(a.size()); ++i)
    for (long j = 0; i + j <= D && j < static_cast<long>(b.size()); ++j)
      c[i + j] += a[i] * b[j];
  return c;
}

// P(q^s t) as a rational series
std::vector<mpq_class> scaled_P(const PPoly& P, const mpz_class& q, unsigned s,
                                long D) {
  std::vector<mpq_class> f(D + 1, 0);
  mpz_class qs = 1;
  for (unsigned i = 0; i < s; ++i) qs *= q;
  mpz_class pw = 1;
  for (long i = 0; i <= D && i < static_cast<long>(P.c.size()); ++i) {
    f[i] = mpq_class(P.c[i] * pw);
    pw *= qs;
  }
  return f;
}

}  // namespace

void l_function_check(const VarietySpec& spec, const std::vector<mpz_class>& S,
                      const PPoly& P, unsigned T) {
  const long D = T;
  if (S.size() < T) throw InputError("l_function_check needs S_1..S_T");
  const mpz_class q(static_cast<unsigned long>(spec.field.size()));
  const int sign = (spec.n + spec.r) % 2 == 0 ? 1 : -1;  // (-1)^{n+r}

  // LHS: exp(sum S_m t^m/m) raised to (-1)^{n+r}
  std::vector<mpq_class> logl(D + 1, 0);
  for (long m = 1; m <= D; ++m) logl[m] = mpq_class(sign) * mpq_class(S[m - 1]) / m;
  auto lhs = series_exp(logl, D);

  // RHS: (1 - q^{n+1} t)^{(-1)^{n+r-1}} * P(q^r t) / P(q^{r+1} t)
  mpz_class qn1 = 1;
  for (unsigned i = 0; i <= spec.n; ++i) qn1 *= q;
  std::vector<mpq_class> lin(2, 0);
  lin[0] = 1;
  lin[1] = -mpq_class(qn1);
  std::vector<mpq_class> rhs = sign < 0 ? lin : series_inv(lin, D);
  if (sign < 0) rhs.resize(D + 1, 0);
  rhs = series_mul(rhs, scaled_P(P, q, spec.r, D), D);
  rhs = series_mul(rhs, series_inv(scaled_P(P, q, spec.r + 1, D), D), D);

  for (long k = 0; k <= D; ++k)
    if (lhs[k] != rhs[k])
      throw MismatchAtDegree("L-function identity fails at degree " +
                             std::to_string(k));
}

}  // namespace cizeta
