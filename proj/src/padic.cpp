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

#include "cizeta/padic.hpp"

#include <algorithm>
#include <cmath>

namespace cizeta {

namespace {

uint64_t pow_u64_checked(unsigned p, int e) {
  uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (uint64_t(1) << 62) / p) throw TooLarge("p^nwork exceeds 2^62");
    r *= p;
  }
  return r;
}

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = uint64_t((__uint128_t)r * b % m);
    b = uint64_t((__uint128_t)b * b % m);
    e >>= 1;
  }
  return r;
}

uint64_t inv_mod_prime(uint64_t a, uint64_t p) {
  return powmod_u64(a % p, p - 2, p);
}

int vp_u64(uint64_t x, unsigned p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

uint64_t PadicCtx::addm(uint64_t a, uint64_t b) const {
  uint64_t s = a + b;
  return s >= pn_ ? s - pn_ : s;
}

uint64_t PadicCtx::subm(uint64_t a, uint64_t b) const {
  return a >= b ? a - b : a + pn_ - b;
}

uint64_t PadicCtx::mulm(uint64_t a, uint64_t b) const {
  return uint64_t((__uint128_t)a * b % pn_);
}

PadicCtx::PadicCtx(unsigned p, int nwork) : p_(p), nwork_(nwork) {
  if (p < 2 || !is_prime_u64(p)) throw CompositeP("p must be prime");
  if (nwork < 2) throw InputError("nwork must be at least 2");
  pn_ = pow_u64_checked(p, nwork);

  unsigned d = p - 1;
  binom_.assign(d, std::vector<uint64_t>(d, 0));
  for (unsigned i = 0; i < d; ++i) {
    binom_[i][0] = 1;
    for (unsigned j = 1; j <= i; ++j)
      binom_[i][j] = addm(binom_[i - 1][j - 1], j < d && j <= i - 1 ? binom_[i - 1][j] : 0);
  }

  lambda_pows_.push_back(one());

  // u_lambda = lambda^{p-1} / p, a unit.
  u_lambda_ = div_exact_p(pow(lambda(), p - 1));
  u_lambda_res_inv_ = inv_mod_prime(residue_mod_lambda(u_lambda_), p_);

  gamma_ = gamma_root(*this);
  // nu = lambda / gamma = lambda * gamma^{p-2} / (p * u_gamma) with
  // u_gamma = gamma^{p-1}/p a unit.
  PVec u_gamma = div_exact_p(pow(gamma_, p - 1));
  nu_ = mul(div_exact_p(mul(lambda(), pow(gamma_, p - 2))), invert_unit(u_gamma));
}

PVec PadicCtx::one() const {
  PVec r(dim(), 0);
  r[0] = 1 % pn_;
  return r;
}

PVec PadicCtx::from_int(long v) const {
  PVec r(dim(), 0);
  long m = v % (long)pn_;
  if (m < 0) m += (long)pn_;
  r[0] = (uint64_t)m;
  return r;
}

PVec PadicCtx::from_mpq(const mpq_class& v) const {
  mpz_class num = v.get_num(), den = v.get_den();
  mpz_class m = pn_;
  mpz_class dinv;
  if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DivisionNotExact("denominator divisible by p");
  mpz_class res = (num % m) * dinv % m;
  if (res < 0) res += m;
  PVec r(dim(), 0);
  r[0] = mpz_get_ui(res.get_mpz_t());
  return r;
}

bool PadicCtx::is_zero(const PVec& x) const {
  for (auto c : x)
    if (c % pn_ != 0) return false;
  return true;
}

bool PadicCtx::equal_mod(const PVec& x, const PVec& y, int digits) const {
  uint64_t m = 1;
  for (int i = 0; i < digits; ++i) m *= p_;
  for (unsigned i = 0; i < dim(); ++i)
    if (subm(x[i], y[i]) % m != 0 && subm(y[i], x[i]) % m != 0) return false;
  return true;
}

PVec PadicCtx::add(const PVec& a, const PVec& b) const {
  PVec r(dim());
  for (unsigned i = 0; i < dim(); ++i) r[i] = addm(a[i], b[i]);
  return r;
}

PVec PadicCtx::sub(const PVec& a, const PVec& b) const {
  PVec r(dim());
  for (unsigned i = 0; i < dim(); ++i) r[i] = subm(a[i], b[i]);
  return r;
}

PVec PadicCtx::neg(const PVec& a) const {
  PVec r(dim());
  for (unsigned i = 0; i < dim(); ++i) r[i] = subm(0, a[i]);
  return r;
}

PVec PadicCtx::mul(const PVec& a, const PVec& b) const {
  // Convolve on zeta-powers, fold with zeta^p = 1, then eliminate zeta^{p-1}
  // through 1 + zeta + ... + zeta^{p-1} = 0.
  std::vector<uint64_t> acc(p_, 0);
  for (unsigned i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      unsigned k = (i + j) % p_;
      acc[k] = addm(acc[k], mulm(a[i], b[j]));
    }
  }
  PVec r(dim());
  for (unsigned i = 0; i < dim(); ++i) r[i] = subm(acc[i], acc[p_ - 1]);
  return r;
}

PVec PadicCtx::scale(uint64_t c, const PVec& a) const {
  PVec r(dim());
  c %= pn_;
  for (unsigned i = 0; i < dim(); ++i) r[i] = mulm(c, a[i]);
  return r;
}

PVec PadicCtx::pow(PVec base, unsigned long e) const {
  PVec r = one();
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

PVec PadicCtx::zeta() const {
  PVec r(dim(), 0);
  if (p_ == 2) {
    r[0] = pn_ - 1;  // zeta_2 = -1
  } else {
    r[1] = 1;
  }
  return r;
}

PVec PadicCtx::lambda() const { return sub(zeta(), one()); }

const PVec& PadicCtx::lambda_pow(long j) const {
  if (j < 0) throw Error("negative lambda power requested");
  while ((long)lambda_pows_.size() <= j)
    lambda_pows_.push_back(mul(lambda_pows_.back(), lambda()));
  return lambda_pows_[(size_t)j];
}

PVec PadicCtx::lambda_coords(const PVec& x) const {
  // zeta^i = (1+lambda)^i: coordinate of lambda^j is sum_i C(i,j) x_i.
  PVec b(dim(), 0);
  for (unsigned j = 0; j < dim(); ++j)
    for (unsigned i = j; i < dim(); ++i)
      b[j] = addm(b[j], mulm(binom_[i][j], x[i]));
  return b;
}

long PadicCtx::ord_lambda(const PVec& x) const {
  PVec b = lambda_coords(x);
  long best = kOrdInf;
  for (unsigned j = 0; j < dim(); ++j) {
    if (b[j] == 0) continue;
    long o = (long)(p_ - 1) * vp_u64(b[j], p_) + (long)j;
    best = std::min(best, o);
  }
  return best;
}

mpq_class PadicCtx::ord_p(const PVec& x) const {
  long o = ord_lambda(x);
  if (o == kOrdInf) throw InputError("ord_p of zero representative");
  mpq_class r(o, p_ - 1);
  r.canonicalize();
  return r;
}

uint64_t PadicCtx::residue_mod_lambda(const PVec& x) const {
  uint64_t s = 0;
  for (auto c : x) s = (s + c) % p_;
  return s;
}

uint64_t PadicCtx::residue_at(const PVec& x, long j) const {
  // b_i p^v lambda^i = b-unit * u_lambda^{-v} lambda^{(p-1)v+i} + higher.
  PVec b = lambda_coords(x);
  uint64_t res = 0;
  for (unsigned i = 0; i < dim(); ++i) {
    if (b[i] == 0) continue;
    int v = vp_u64(b[i], p_);
    long o = (long)(p_ - 1) * v + (long)i;
    if (o < j) throw InputError("residue_at below the valuation floor");
    if (o > j) continue;
    uint64_t digit = b[i];
    for (int t = 0; t < v; ++t) digit /= p_;
    digit %= p_;
    uint64_t corr = powmod_u64(u_lambda_res_inv_, (uint64_t)v, p_);
    res = (res + digit * corr) % p_;
  }
  return res;
}

PVec PadicCtx::monomial(uint64_t c, long j) const { return scale(c, lambda_pow(j)); }

PVec PadicCtx::div_exact_p(const PVec& x, unsigned k) const {
  uint64_t pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p_;
  PVec r(dim());
  for (unsigned i = 0; i < dim(); ++i) {
    if (x[i] % pk != 0) throw DivisionNotExact("coordinate not divisible by p^k");
    r[i] = x[i] / pk;
  }
  return r;
}

PVec PadicCtx::invert_unit(const PVec& u) const {
  if (residue_mod_lambda(u) == 0) throw DivisionNotExact("not a unit");
  // Series inverse in F_p[lambda]/lambda^{p-1} as the Hensel seed.
  PVec a = lambda_coords(u);
  for (auto& c : a) c %= p_;
  std::vector<uint64_t> v(dim(), 0);
  uint64_t a0inv = inv_mod_prime(a[0], p_);
  v[0] = a0inv;
  for (unsigned k = 1; k < dim(); ++k) {
    uint64_t s = 0;
    for (unsigned i = 1; i <= k; ++i) s = (s + a[i] * v[k - i]) % p_;
    v[k] = (p_ - s % p_) * a0inv % p_;
  }
  PVec x = zero();
  for (unsigned j = 0; j < dim(); ++j)
    x = add(x, monomial(v[j], (long)j));
  // Hensel doubling: x <- x(2 - ux).
  int steps = 1;
  while ((1 << steps) < nwork_ + 1 && steps < 62) ++steps;
  for (int s = 0; s <= steps; ++s)
    x = mul(x, sub(from_int(2), mul(u, x)));
  return x;
}

PVec PadicCtx::teichmuller(uint64_t c) const {
  uint64_t x = c % pn_;
  for (int i = 0; i < nwork_ + 2; ++i) x = powmod_u64(x, p_, pn_);
  PVec r(dim(), 0);
  r[0] = x;
  return r;
}

namespace {

// Terms t^{p^i}/p^i kept while their valuation at ord t = 1/(p-1) stays
// below the working precision.
int gamma_series_depth(unsigned p, int nwork) {
  int L = 0;
  double pe = p;
  while (pe / (p - 1) - (L + 1) < nwork + 1 && L < 62) {
    ++L;
    pe *= p;
  }
  return L;
}

PVec eval_gamma_series(const PadicCtx& ctx, const PVec& x, int L) {
  PVec s = x;
  unsigned long pe = ctx.p();
  for (int i = 1; i <= L; ++i) {
    s = ctx.add(s, ctx.div_exact_p(ctx.pow(x, pe), (unsigned)i));
    if (i < L) pe *= ctx.p();
  }
  return s;
}

PVec eval_gamma_series_deriv(const PadicCtx& ctx, const PVec& x, int L) {
  PVec s = ctx.one();
  unsigned long pe = ctx.p();
  for (int i = 1; i <= L; ++i) {
    s = ctx.add(s, ctx.pow(x, pe - 1));
    if (i < L) pe *= ctx.p();
  }
  return s;
}

}  // namespace

PVec gamma_root(const PadicCtx& ctx) {
  const int L = gamma_series_depth(ctx.p(), ctx.nwork());
  // Representative division by p^i blurs the top i digits, so the residual
  // can only be certified to this depth.
  const long target = (long)(ctx.nwork() - L - 1) * (long)(ctx.p() - 1);
  for (unsigned c = 1; c < ctx.p(); ++c) {
    PVec x = ctx.mul(ctx.teichmuller(c), ctx.lambda());
    PVec g = eval_gamma_series(ctx, x, L);
    long o = ctx.ord_lambda(g);
    if (o < 2) continue;  // wrong branch: no quadratic Newton basin
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      if (o >= target || o == PadicCtx::kOrdInf) {
        ok = true;
        break;
      }
      PVec step = ctx.mul(g, ctx.invert_unit(eval_gamma_series_deriv(ctx, x, L)));
      x = ctx.sub(x, step);
      g = eval_gamma_series(ctx, x, L);
      long o2 = ctx.ord_lambda(g);
      if (o2 <= o) break;  // stalled
      o = o2;
    }
    if (ok && ctx.ord_lambda(x) == 1) return x;
  }
  throw NoRootFound("no gamma with ord 1/(p-1) found");
}

std::vector<PVec> splitting_coeffs(const PadicCtx& ctx, int i_max) {
  if (i_max >= (long)(ctx.p() - 1) * (ctx.nwork() - 2))
    throw PrecisionExhausted("lambda_i valuation bound reaches working precision");
  // Artin-Hasse exponential coefficients, exactly over Q.
  std::vector<mpq_class> e((size_t)i_max + 1);
  e[0] = 1;
  for (int k = 1; k <= i_max; ++k) {
    mpq_class s = 0;
    unsigned long pe = 1;
    while ((long)pe <= k) {
      s += e[(size_t)(k - (long)pe)];
      if (pe > (unsigned long)k / ctx.p()) break;
      pe *= ctx.p();
    }
    e[(size_t)k] = s / k;
  }
  std::vector<PVec> lam((size_t)i_max + 1);
  PVec gpow = ctx.one();
  for (int i = 0; i <= i_max; ++i) {
    lam[(size_t)i] = ctx.mul(ctx.from_mpq(e[(size_t)i]), gpow);
    if (i < i_max) gpow = ctx.mul(gpow, ctx.gamma());
  }
  return lam;
}

std::vector<PVec> gamma_partial_sums(const PadicCtx& ctx, int l_max) {
  std::vector<PVec> out((size_t)l_max + 1);
  PVec acc = ctx.gamma();
  out[0] = acc;
  unsigned long pe = ctx.p();
  for (int l = 1; l <= l_max; ++l) {
    acc = ctx.add(acc, ctx.div_exact_p(ctx.pow(ctx.gamma(), pe), (unsigned)l));
    out[(size_t)l] = acc;
    if (l < l_max) pe *= ctx.p();
  }
  return out;
}

}  // namespace cizeta
