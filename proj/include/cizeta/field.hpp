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

#include <cstdint>
#include <utility>
#include <vector>

#include "cizeta/fp.hpp"

namespace cizeta {

// Exact arithmetic in F_p, F_q = F_{p^a} and extensions F_{q^m}.
//
// Elements of F_q are dense coefficient vectors of length a over F_p;
// elements of F_{q^m} are vectors of length m over F_q.  The modulus is
// always the lexicographically smallest monic irreducible of the required
// degree, coefficients compared low-degree-first, so a given (p, a) pair
// reproduces the same field on every run.

using FqElem = std::vector<uint32_t>;

namespace detail {

// Dense univariate polynomial arithmetic over a coefficient field given by
// an ops adapter.  Used both for F_p[x] (building F_q) and F_q[z]
// (building F_{q^m}).
template <class Ops>
struct PolyArith {
  using E = typename Ops::Elem;
  using Poly = std::vector<E>;
  const Ops& F;

  explicit PolyArith(const Ops& ops) : F(ops) {}

  static void trim(Poly& f, const Ops& F) {
    while (!f.empty() && F.is_zero(f.back())) f.pop_back();
  }

  Poly add(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), F.zero());
    for (size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
    trim(a, F);
    return a;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    trim(c, F);
    return c;
  }

  // a mod m, m monic
  Poly mod(Poly a, const Poly& m) const {
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
      E lead = a.back();
      size_t shift = a.size() - 1 - dm;
      if (!F.is_zero(lead))
        for (size_t i = 0; i < dm; ++i)
          a[shift + i] = F.sub(a[shift + i], F.mul(lead, m[i]));
      a.pop_back();
      trim(a, F);
      if (a.size() <= dm) break;
    }
    return a;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    return mod(mul(a, b), m);
  }

  Poly powmod(Poly a, __uint128_t e, const Poly& m) const {
    Poly r{F.one()};
    a = mod(std::move(a), m);
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  }

  Poly gcd(Poly a, Poly b) const {
    while (!b.empty()) {
      // make b monic, then reduce
      E linv = F.inv(b.back());
      for (auto& c : b) c = F.mul(c, linv);
      a = mod(std::move(a), b);
      std::swap(a, b);
    }
    return a;
  }

  // Monic f of degree k >= 2 is irreducible iff it shares no factor with
  // x^{card^j} - x for any j <= k/2 (card = size of the coefficient field).
  bool irreducible(const Poly& f, __uint128_t card) const {
    size_t k = f.size() - 1;
    if (k == 1) return true;
    Poly xq{F.zero(), F.one()};  // x
    for (size_t j = 1; 2 * j <= k; ++j) {
      xq = powmod(xq, card, f);
      Poly t = xq;
      if (t.size() < 2) t.resize(2, F.zero());
      t[1] = F.sub(t[1], F.one());  // x^{card^j} - x
      trim(t, F);
      Poly g = gcd(f, t);
      if (g.size() != 1) return false;
    }
    return true;
  }

  // Lexicographically smallest monic irreducible of degree k, low-degree
  // coefficients most significant in the comparison.
  Poly smallest_irreducible(size_t k, __uint128_t card) const {
    Poly f(k + 1, F.zero());
    f[k] = F.one();
    std::vector<uint64_t> idx(k, 0);  // idx[i] = enumeration index of coeff of x^i
    for (;;) {
      for (size_t i = 0; i < k; ++i) f[i] = F.element_at(idx[i]);
      if (irreducible(f, card)) return f;
      // increment: last coordinate (highest degree coeff) varies fastest
      size_t pos = k;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < F.card_u64()) break;
        idx[pos] = 0;
        if (pos == 0) throw Error("no irreducible polynomial found");  // unreachable
      }
    }
  }
};

struct PrimeOps {
  using Elem = uint32_t;
  uint64_t p;
  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  bool is_zero(Elem a) const { return a == 0; }
  Elem add(Elem a, Elem b) const { return static_cast<Elem>(add_mod(a, b, p)); }
  Elem sub(Elem a, Elem b) const { return static_cast<Elem>(sub_mod(a, b, p)); }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(mul_mod(a, b, p)); }
  Elem inv(Elem a) const { return static_cast<Elem>(inv_mod(a, p)); }
  Elem element_at(uint64_t i) const { return static_cast<Elem>(i); }
  uint64_t card_u64() const { return p; }
};

}  // namespace detail

class FieldCtx {
 public:
  // make_field(p, a): deterministic context for F_{p^a}.
  FieldCtx(uint64_t p, unsigned a) : p_(p), a_(a) {
    if (!is_prime_u64(p)) throw CompositeP("p = " + std::to_string(p) + " is not prime");
    if (p > (1ull << 20)) throw TooLarge("p exceeds 2^20");
    if (a < 1 || a > 16) throw TooLarge("extension degree a out of [1,16]");
    long double sz = 1.0L;
    for (unsigned i = 0; i < a; ++i) sz *= static_cast<long double>(p);
    if (sz > static_cast<long double>(1ull << 40)) throw TooLarge("p^a exceeds 2^40");
    size_ = 1;
    for (unsigned i = 0; i < a; ++i) size_ *= p;
    detail::PrimeOps ops{p};
    if (a == 1) {
      modulus_ = {0, 1};  // x - 0 convention for the prime field
    } else {
      detail::PolyArith<detail::PrimeOps> P(ops);
      modulus_ = P.smallest_irreducible(a, p);
    }
  }

  uint64_t p() const { return p_; }
  unsigned a() const { return a_; }
  unsigned degree() const { return a_; }
  uint64_t size() const { return size_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  FqElem zero() const { return FqElem(a_, 0); }
  FqElem one() const { return from_int(1); }
  FqElem from_int(int64_t c) const {
    FqElem e(a_, 0);
    int64_t r = c % static_cast<int64_t>(p_);
    if (r < 0) r += static_cast<int64_t>(p_);
    e[0] = static_cast<uint32_t>(r);
    return e;
  }
  bool is_zero(const FqElem& x) const {
    for (auto c : x)
      if (c) return false;
    return true;
  }
  FqElem add(const FqElem& x, const FqElem& y) const {
    FqElem z(a_);
    for (unsigned i = 0; i < a_; ++i) z[i] = static_cast<uint32_t>(add_mod(x[i], y[i], p_));
    return z;
  }
  FqElem sub(const FqElem& x, const FqElem& y) const {
    FqElem z(a_);
    for (unsigned i = 0; i < a_; ++i) z[i] = static_cast<uint32_t>(sub_mod(x[i], y[i], p_));
    return z;
  }
  FqElem neg(const FqElem& x) const { return sub(zero(), x); }
  FqElem scale(uint64_t c, const FqElem& x) const {
    FqElem z(a_);
    c %= p_;
    for (unsigned i = 0; i < a_; ++i) z[i] = static_cast<uint32_t>(mul_mod(x[i], c, p_));
    return z;
  }
  FqElem mul(const FqElem& x, const FqElem& y) const {
    if (a_ == 1) return {static_cast<uint32_t>(mul_mod(x[0], y[0], p_))};
    detail::PrimeOps ops{p_};
    detail::PolyArith<detail::PrimeOps> P(ops);
    auto prod = P.mod(P.mul(strip(x), strip(y)), modulus_);
    return pad(prod);
  }
  FqElem pow(FqElem x, uint64_t e) const {
    FqElem r = one();
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  FqElem inv(const FqElem& x) const {
    if (is_zero(x)) throw Error("division by zero in F_q");
    return pow(x, size_ - 2);
  }

  // Enumeration: index i in [0, size) maps to digits of i base p, low degree
  // first.  Element 0 comes first.
  FqElem element_at(uint64_t i) const {
    FqElem e(a_);
    for (unsigned k = 0; k < a_; ++k) {
      e[k] = static_cast<uint32_t>(i % p_);
      i /= p_;
    }
    return e;
  }
  uint64_t index_of(const FqElem& x) const {
    uint64_t i = 0;
    for (unsigned k = a_; k-- > 0;) i = i * p_ + x[k];
    return i;
  }

  // Absolute trace to F_p: sum of x^{p^k}, k = 0..a-1.
  uint32_t trace_to_prime(const FqElem& x) const {
    FqElem acc = zero(), t = x;
    for (unsigned k = 0; k < a_; ++k) {
      acc = add(acc, t);
      t = pow(t, p_);
    }
    for (unsigned i = 1; i < a_; ++i)
      if (acc[i]) throw Error("trace left the prime subfield (bug)");
    return acc[0];
  }

 private:
  std::vector<uint32_t> strip(const FqElem& x) const {
    std::vector<uint32_t> v = x;
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  }
  FqElem pad(std::vector<uint32_t> v) const {
    v.resize(a_, 0);
    return v;
  }

  uint64_t p_;
  unsigned a_;
  uint64_t size_;
  std::vector<uint32_t> modulus_;
};

namespace detail {

struct FqOps {
  using Elem = FqElem;
  const FieldCtx* F;
  Elem zero() const { return F->zero(); }
  Elem one() const { return F->one(); }
  bool is_zero(const Elem& a) const { return F->is_zero(a); }
  Elem add(const Elem& a, const Elem& b) const { return F->add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return F->sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return F->mul(a, b); }
  Elem inv(const Elem& a) const { return F->inv(a); }
  Elem element_at(uint64_t i) const { return F->element_at(i); }
  uint64_t card_u64() const { return F->size(); }
};

}  // namespace detail

using ExtElem = std::vector<FqElem>;

// F_{q^m} presented as F_q[z]/(modulus), modulus the lex-smallest monic
// irreducible of degree m over F_q.
class ExtHandle {
 public:
  ExtHandle(const FieldCtx& base, unsigned m) : base_(&base), m_(m) {
    if (m < 1) throw TooLarge("extension degree m must be >= 1");
    long double sz = 1.0L;
    for (unsigned i = 0; i < m; ++i) sz *= static_cast<long double>(base.size());
    if (sz > static_cast<long double>(1ull << 40)) throw TooLarge("q^m exceeds 2^40");
    size_ = 1;
    for (unsigned i = 0; i < m; ++i) size_ *= base.size();
    if (m == 1) {
      modulus_ = {base.zero(), base.one()};
    } else {
      detail::FqOps ops{&base};
      detail::PolyArith<detail::FqOps> P(ops);
      modulus_ = P.smallest_irreducible(m, base.size());
    }
  }

  const FieldCtx& base() const { return *base_; }
  unsigned m() const { return m_; }
  uint64_t size() const { return size_; }
  const std::vector<FqElem>& modulus() const { return modulus_; }

  ExtElem zero() const { return ExtElem(m_, base_->zero()); }
  ExtElem one() const { return embed(base_->one()); }
  ExtElem embed(const FqElem& x) const {
    ExtElem e(m_, base_->zero());
    e[0] = x;
    return e;
  }
  bool is_zero(const ExtElem& x) const {
    for (const auto& c : x)
      if (!base_->is_zero(c)) return false;
    return true;
  }
  ExtElem add(const ExtElem& x, const ExtElem& y) const {
    ExtElem z(m_);
    for (unsigned i = 0; i < m_; ++i) z[i] = base_->add(x[i], y[i]);
    return z;
  }
  ExtElem sub(const ExtElem& x, const ExtElem& y) const {
    ExtElem z(m_);
    for (unsigned i = 0; i < m_; ++i) z[i] = base_->sub(x[i], y[i]);
    return z;
  }
  ExtElem mul(const ExtElem& x, const ExtElem& y) const {
    detail::FqOps ops{base_};
    detail::PolyArith<detail::FqOps> P(ops);
    auto prod = P.mod(P.mul(strip(x), strip(y)), modulus_);
    prod.resize(m_, base_->zero());
    return prod;
  }
  ExtElem pow(ExtElem x, __uint128_t e) const {
    ExtElem r = one();
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  ExtElem inv(const ExtElem& x) const {
    if (is_zero(x)) throw Error("division by zero in F_{q^m}");
    return pow(x, static_cast<__uint128_t>(size_) - 2);
  }

  ExtElem element_at(uint64_t i) const {
    ExtElem e(m_);
    const uint64_t q = base_->size();
    for (unsigned k = 0; k < m_; ++k) {
      e[k] = base_->element_at(i % q);
      i /= q;
    }
    return e;
  }
  uint64_t index_of(const ExtElem& x) const {
    uint64_t i = 0;
    for (unsigned k = m_; k-- > 0;) i = i * base_->size() + base_->index_of(x[k]);
    return i;
  }

  // Relative trace to F_q: sum of x^{q^k}, k = 0..m-1.
  FqElem trace_to_base(const ExtElem& x) const {
    ExtElem acc = zero(), t = x;
    for (unsigned k = 0; k < m_; ++k) {
      acc = add(acc, t);
      t = pow(t, base_->size());
    }
    for (unsigned i = 1; i < m_; ++i)
      if (!base_->is_zero(acc[i])) throw Error("relative trace left F_q (bug)");
    return acc[0];
  }

  // Absolute trace to F_p, the composite Tr_{F_q/F_p} . Tr_{F_{q^m}/F_q}.
  uint32_t trace_to_prime(const ExtElem& x) const {
    return base_->trace_to_prime(trace_to_base(x));
  }

 private:
  std::vector<FqElem> strip(const ExtElem& x) const {
    std::vector<FqElem> v = x;
    while (!v.empty() && base_->is_zero(v.back())) v.pop_back();
    return v;
  }

  const FieldCtx* base_;
  unsigned m_;
  uint64_t size_;
  std::vector<FqElem> modulus_;
};

}  // namespace cizeta
