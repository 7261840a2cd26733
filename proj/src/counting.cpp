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

#include "cizeta/counting.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "cizeta/kernels.hpp"

namespace cizeta {

uint64_t enumeration_cost(const VarietySpec& spec, unsigned m, uint64_t budget) {
  __uint128_t cost = 1;
  for (unsigned i = 0; i < m * (spec.n + 1); ++i) {
    cost *= spec.field.size();
    if (cost > budget)
      throw BudgetExceeded("enumeration cost q^{m(n+1)} exceeds the budget of " +
                           std::to_string(budget) + " evaluations");
  }
  return static_cast<uint64_t>(cost);
}

namespace {

constexpr uint64_t kZechLimit = 1u << 16;

// fix[i]: -1 = free variable, otherwise the constant 0 or 1
using FixVec = std::vector<int>;

unsigned free_count(const FixVec& fix) {
  unsigned c = 0;
  for (int v : fix) c += v < 0;
  return c;
}

uint64_t ipow(uint64_t b, unsigned e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

template <class Fn>
uint64_t parallel_sum(uint64_t prefixes, unsigned workers, Fn fn) {
  workers = std::max(1u, std::min<unsigned>(workers, 64));
  if (prefixes < workers) workers = std::max<uint64_t>(1, prefixes);
  if (workers == 1) return fn(0, prefixes);
  std::vector<uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    uint64_t b = prefixes * w / workers, e = prefixes * (w + 1) / workers;
    pool.emplace_back([&partial, w, b, e, &fn] { partial[w] = fn(b, e); });
  }
  for (auto& t : pool) t.join();
  uint64_t total = 0;
  for (auto v : partial) total += v;  // fixed order: bit-identical
  return total;
}

// ---------------- prime field, m == 1: flat kernels ----------------

// nullopt when a polynomial reduces to a nonzero constant (no solutions)
std::optional<kernels::FlatSystem> flat_system(const VarietySpec& spec,
                                               const FixVec& fix) {
  const uint32_t p = static_cast<uint32_t>(spec.field.p());
  kernels::FlatSystem sys;
  sys.p = p;
  sys.nvars = free_count(fix);
  for (const auto& f : spec.polys) {
    kernels::FlatPoly poly;
    for (const auto& [e, c] : f.terms) {
      bool killed = false;
      std::vector<uint16_t> fe;
      for (unsigned i = 0; i <= spec.n; ++i) {
        if (fix[i] < 0)
          fe.push_back(e[i]);
        else if (fix[i] == 0 && e[i] > 0)
          killed = true;
      }
      if (killed) continue;
      poly.coeffs.push_back(c.empty() ? 0u : c[0]);
      poly.exps.insert(poly.exps.end(), fe.begin(), fe.end());
    }
    if (poly.coeffs.empty()) continue;  // identically zero after substitution
    if (sys.nvars == 0 || *std::max_element(poly.exps.begin(), poly.exps.end()) == 0) {
      uint64_t c = 0;
      for (auto v : poly.coeffs) c += v;
      if (c % p != 0) return std::nullopt;
      continue;
    }
    sys.polys.push_back(std::move(poly));
  }
  return sys;
}

uint64_t flat_count(const VarietySpec& spec, const FixVec& fix, unsigned workers) {
  auto sys = flat_system(spec, fix);
  if (!sys) return 0;
  if (sys->nvars == 0) return 1;  // constraints all vanished identically
  if (sys->polys.empty()) return ipow(sys->p, sys->nvars);
  uint64_t prefixes = ipow(sys->p, sys->nvars - 1);
  return parallel_sum(prefixes, workers, [&](uint64_t b, uint64_t e) {
    return kernels::count_zeros(*sys, b, e);
  });
}

// ---------------- F_{q^m} via Zech logarithms ----------------

// Elements coded as uint32: 0 is zero, k+1 is g^k for a generator g.
struct Zech {
  const ExtHandle* E;
  uint64_t Q;
  std::vector<uint32_t> code_of;    // element index -> code
  std::vector<uint64_t> exp_index;  // k -> element index of g^k
  std::vector<uint32_t> zech;       // code of 1 + g^k

  explicit Zech(const ExtHandle& ext) : E(&ext), Q(ext.size()) {
    if (Q > kZechLimit) throw TooLarge("field too large for table arithmetic");
    // find a generator of the multiplicative group
    std::vector<uint64_t> prime_factors;
    uint64_t n = Q - 1;
    for (uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime_factors.push_back(d);
        while (n % d == 0) n /= d;
      }
    if (n > 1) prime_factors.push_back(n);
    ExtElem g;
    for (uint64_t i = 1;; ++i) {
      if (i >= Q) throw NoRootFound("no multiplicative generator found (bug)");
      g = E->element_at(i);
      bool ok = !E->is_zero(g);
      for (auto f : prime_factors)
        if (ok && E->pow(g, (Q - 1) / f) == E->one()) ok = false;
      if (ok) break;
    }
    code_of.assign(Q, 0);
    exp_index.assign(Q - 1, 0);
    ExtElem cur = E->one();
    for (uint64_t k = 0; k < Q - 1; ++k) {
      uint64_t idx = E->index_of(cur);
      code_of[idx] = static_cast<uint32_t>(k + 1);
      exp_index[k] = idx;
      cur = E->mul(cur, g);
    }
    zech.assign(Q - 1, 0);
    for (uint64_t k = 0; k < Q - 1; ++k) {
      ExtElem s = E->add(E->element_at(exp_index[k]), E->one());
      zech[k] = code_of[E->index_of(s)];
    }
  }

  uint32_t mul(uint32_t a, uint32_t b) const {
    if (!a || !b) return 0;
    return static_cast<uint32_t>((a - 1 + static_cast<uint64_t>(b) - 1) % (Q - 1)) + 1;
  }
  uint32_t add(uint32_t a, uint32_t b) const {
    if (!a) return b;
    if (!b) return a;
    uint64_t d = (b - 1 + (Q - 1) - (a - 1)) % (Q - 1);
    uint32_t z = zech[d];
    if (!z) return 0;
    return static_cast<uint32_t>((a - 1 + static_cast<uint64_t>(z) - 1) % (Q - 1)) + 1;
  }
  uint32_t inv(uint32_t a) const {
    if (!a) throw Error("division by zero in table field");
    return static_cast<uint32_t>(((Q - 1) - (a - 1)) % (Q - 1)) + 1;
  }
  uint32_t pow(uint32_t a, uint64_t e) const {
    if (e == 0) return 1;
    if (!a) return 0;
    return static_cast<uint32_t>((a - 1) * (e % (Q - 1)) % (Q - 1)) + 1;
  }
  uint32_t lift_coeff(const FqElem& c) const { return code_of[E->index_of(E->embed(c))]; }
  ExtElem decode(uint32_t a) const {
    return a ? E->element_at(exp_index[a - 1]) : E->zero();
  }
};

struct CodedPoly {
  std::vector<uint32_t> coeffs;
  std::vector<uint16_t> exps;  // nterms * nvars
};

struct CodedSys {
  uint32_t nvars = 0;
  std::vector<CodedPoly> polys;
  bool inconsistent = false;  // some equation reduced to a nonzero constant
  uint16_t max_exp() const {
    uint16_t m = 0;
    for (const auto& poly : polys)
      for (auto e : poly.exps) m = std::max(m, e);
    return m;
  }
};

CodedSys coded_system(const VarietySpec& spec, const Zech& Z, const FixVec& fix) {
  CodedSys sys;
  sys.nvars = free_count(fix);
  for (const auto& f : spec.polys) {
    CodedPoly poly;
    for (const auto& [e, c] : f.terms) {
      bool killed = false;
      std::vector<uint16_t> fe;
      for (unsigned i = 0; i <= spec.n; ++i) {
        if (fix[i] < 0)
          fe.push_back(e[i]);
        else if (fix[i] == 0 && e[i] > 0)
          killed = true;
      }
      if (killed) continue;
      poly.coeffs.push_back(Z.lift_coeff(c));
      poly.exps.insert(poly.exps.end(), fe.begin(), fe.end());
    }
    if (poly.coeffs.empty()) continue;
    bool constant = sys.nvars == 0;
    if (!constant)
      constant = *std::max_element(poly.exps.begin(), poly.exps.end()) == 0;
    if (constant) {
      uint32_t acc = 0;
      for (auto c : poly.coeffs) acc = Z.add(acc, c);
      if (acc) sys.inconsistent = true;
      continue;
    }
    sys.polys.push_back(std::move(poly));
  }
  return sys;
}

uint64_t zech_count_range(const Zech& Z, const CodedSys& sys,
                          const std::vector<uint32_t>& vpow, uint64_t pbegin,
                          uint64_t pend) {
  const uint64_t Q = Z.Q;
  const uint32_t nvars = sys.nvars;
  std::vector<uint32_t> digits(nvars - 1);
  std::vector<std::vector<uint32_t>> prefix_prod(sys.polys.size());
  for (size_t k = 0; k < sys.polys.size(); ++k)
    prefix_prod[k].resize(sys.polys[k].coeffs.size());
  uint64_t count = 0;
  for (uint64_t prefix = pbegin; prefix < pend; ++prefix) {
    uint64_t rest = prefix;
    for (uint32_t i = nvars - 1; i-- > 0;) {
      digits[i] = static_cast<uint32_t>(rest % Q);
      rest /= Q;
    }
    for (size_t k = 0; k < sys.polys.size(); ++k) {
      const auto& poly = sys.polys[k];
      for (size_t t = 0; t < poly.coeffs.size(); ++t) {
        uint32_t prod = poly.coeffs[t];
        const uint16_t* e = &poly.exps[t * nvars];
        for (uint32_t i = 0; i + 1 < nvars; ++i)
          prod = Z.mul(prod, vpow[static_cast<size_t>(e[i]) * Q + digits[i]]);
        prefix_prod[k][t] = prod;
      }
    }
    for (uint64_t v = 0; v < Q; ++v) {
      bool all_zero = true;
      for (size_t k = 0; k < sys.polys.size() && all_zero; ++k) {
        const auto& poly = sys.polys[k];
        uint32_t acc = 0;
        for (size_t t = 0; t < poly.coeffs.size(); ++t) {
          uint16_t e = poly.exps[t * nvars + nvars - 1];
          acc = Z.add(acc, Z.mul(prefix_prod[k][t], vpow[static_cast<size_t>(e) * Q + v]));
        }
        all_zero = acc == 0;
      }
      if (all_zero) ++count;
    }
  }
  return count;
}

// vpow[e * Q + v] = code of (element v)^e
std::vector<uint32_t> zech_pow_table(const Zech& Z, uint16_t max_exp) {
  const uint64_t Q = Z.Q;
  std::vector<uint32_t> t(static_cast<size_t>(max_exp + 1) * Q);
  for (uint64_t v = 0; v < Q; ++v) t[v] = 1;  // v^0 = one
  for (uint64_t v = 0; v < Q; ++v) {
    uint32_t base = Z.code_of[v];
    for (uint16_t e = 1; e <= max_exp; ++e)
      t[static_cast<size_t>(e) * Q + v] = Z.mul(t[(e - 1) * Q + v], base);
  }
  return t;
}

uint64_t zech_count(const VarietySpec& spec, const Zech& Z, const FixVec& fix,
                    unsigned workers) {
  CodedSys sys = coded_system(spec, Z, fix);
  if (sys.inconsistent) return 0;
  if (sys.nvars == 0) return 1;
  if (sys.polys.empty()) return ipow(Z.Q, sys.nvars);
  auto vpow = zech_pow_table(Z, sys.max_exp());
  uint64_t prefixes = ipow(Z.Q, sys.nvars - 1);
  return parallel_sum(prefixes, workers, [&](uint64_t b, uint64_t e) {
    return zech_count_range(Z, sys, vpow, b, e);
  });
}

// ---------------- generic (large-field) fallback ----------------

ExtElem eval_xpoly(const ExtHandle& E, const XPoly& f,
                   const std::vector<ExtElem>& point) {
  ExtElem acc = E.zero();
  for (const auto& [e, c] : f.terms) {
    ExtElem term = E.embed(c);
    for (size_t i = 0; i < point.size(); ++i)
      if (e[i]) term = E.mul(term, E.pow(point[i], e[i]));
    acc = E.add(acc, term);
  }
  return acc;
}

uint64_t generic_count(const VarietySpec& spec, const ExtHandle& E, const FixVec& fix,
                       unsigned workers) {
  const uint64_t Q = E.size();
  unsigned nfree = free_count(fix);
  if (nfree == 0) {
    std::vector<ExtElem> point(spec.n + 1);
    for (unsigned i = 0; i <= spec.n; ++i)
      point[i] = E.embed(spec.field.from_int(fix[i]));
    for (const auto& f : spec.polys)
      if (!E.is_zero(eval_xpoly(E, f, point))) return 0;
    return 1;
  }
  uint64_t prefixes = ipow(Q, nfree - 1);
  return parallel_sum(prefixes, workers, [&](uint64_t pb, uint64_t pe) {
    uint64_t count = 0;
    std::vector<ExtElem> point(spec.n + 1);
    for (uint64_t prefix = pb; prefix < pe; ++prefix) {
      uint64_t rest = prefix;
      std::vector<uint64_t> idx(nfree, 0);
      for (unsigned i = nfree - 1; i-- > 0;) {
        idx[i] = rest % Q;
        rest /= Q;
      }
      for (uint64_t v = 0; v < Q; ++v) {
        idx[nfree - 1] = v;
        unsigned fi = 0;
        for (unsigned i = 0; i <= spec.n; ++i)
          point[i] = fix[i] < 0 ? E.element_at(idx[fi++])
                               : E.embed(spec.field.from_int(fix[i]));
        bool all_zero = true;
        for (const auto& f : spec.polys)
          if (!E.is_zero(eval_xpoly(E, f, point))) {
            all_zero = false;
            break;
          }
        if (all_zero) ++count;
      }
    }
    return count;
  });
}

uint64_t count_fixed(const VarietySpec& spec, unsigned m, const FixVec& fix,
                     unsigned workers) {
  if (spec.field.a() == 1 && m == 1) return flat_count(spec, fix, workers);
  ExtHandle E(spec.field, m);
  if (E.size() <= kZechLimit) {
    Zech Z(E);
    return zech_count(spec, Z, fix, workers);
  }
  return generic_count(spec, E, fix, workers);
}

std::string ext_to_string(const ExtHandle& E, const ExtElem& x) {
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < E.m(); ++i) {
    if (i) os << ";";
    for (size_t j = 0; j < x[i].size(); ++j) os << (j ? "," : "") << x[i][j];
  }
  os << "]";
  return os.str();
}

}  // namespace

uint64_t count_affine(const VarietySpec& spec, unsigned m, uint64_t budget,
                      unsigned workers) {
  spec.validate();
  if (m < 1) throw InputError("m must be >= 1");
  enumeration_cost(spec, m, budget);
  return count_fixed(spec, m, FixVec(spec.n + 1, -1), workers);
}

uint64_t count_projective(const VarietySpec& spec, unsigned m, uint64_t budget,
                          unsigned workers) {
  uint64_t affine = count_affine(spec, m, budget, workers);
  uint64_t qm = ipow(spec.field.size(), m);
  if (affine == 0 || (affine - 1) % (qm - 1) != 0)
    throw NonIntegralRelation("(N'_m - 1)/(q^m - 1) is not integral at m = " +
                              std::to_string(m) + " (implementation bug)");
  return (affine - 1) / (qm - 1);
}

uint64_t count_projective_direct(const VarietySpec& spec, unsigned m,
                                 uint64_t budget, unsigned workers) {
  spec.validate();
  enumeration_cost(spec, m, budget);
  uint64_t total = 0;
  for (unsigned lead = 0; lead <= spec.n; ++lead) {
    FixVec fix(spec.n + 1, -1);
    for (unsigned i = 0; i < lead; ++i) fix[i] = 0;
    fix[lead] = 1;
    total += count_fixed(spec, m, fix, workers);
  }
  return total;
}

CountLedger count_up_to(const VarietySpec& spec, unsigned m_max, uint64_t budget,
                        unsigned workers) {
  CountLedger ledger;
  ledger.workers = workers;
  for (unsigned m = 1; m <= m_max; ++m) {
    auto t0 = std::chrono::steady_clock::now();
    uint64_t affine = count_affine(spec, m, budget, workers);
    uint64_t qm = ipow(spec.field.size(), m);
    if (affine == 0 || (affine - 1) % (qm - 1) != 0)
      throw NonIntegralRelation("point-count relation failed at m = " +
                                std::to_string(m));
    ledger.affine.push_back(affine);
    ledger.projective.push_back((affine - 1) / (qm - 1));
    ledger.seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return ledger;
}

AuditVerdict smoothness_audit(const VarietySpec& spec, unsigned k_max,
                              uint64_t budget, uint64_t sample_seed) {
  spec.validate();
  AuditVerdict verdict;
  // Jacobi matrix entries dF_j/dx_i as polynomials
  std::vector<std::vector<XPoly>> jac(spec.r, std::vector<XPoly>(spec.n + 1));
  for (unsigned j = 0; j < spec.r; ++j)
    for (unsigned i = 0; i <= spec.n; ++i)
      for (const auto& [e, c] : spec.polys[j].terms) {
        if (e[i] == 0) continue;
        auto e2 = e;
        e2[i] -= 1;
        FqElem c2 = spec.field.scale(e[i], c);
        if (!spec.field.is_zero(c2)) jac[j][i].terms.emplace(std::move(e2), std::move(c2));
      }

  const FixVec all_free(spec.n + 1, -1);
  auto coded_single = [&](const Zech& Z, const XPoly& f) {
    VarietySpec one = spec;
    one.polys = {f};
    one.degrees = {1};
    CodedSys s = coded_system(one, Z, all_free);
    return s;
  };

  for (unsigned k = 1; k <= k_max; ++k) {
    enumeration_cost(spec, k, budget);
    ExtHandle E(spec.field, k);
    if (E.size() > kZechLimit)
      throw TooLarge("smoothness audit needs q^k <= 65536; lower k_max");
    Zech Z(E);
    const uint64_t Q = Z.Q;
    const uint32_t minus_one =
        Z.lift_coeff(spec.field.scale(spec.field.p() - 1, spec.field.one()));

    // one coded system per equation and per Jacobi entry, full variable set
    std::vector<CodedSys> eqsys;
    for (const auto& f : spec.polys) eqsys.push_back(coded_single(Z, f));
    std::vector<std::vector<CodedSys>> jsys(spec.r);
    for (unsigned j = 0; j < spec.r; ++j)
      for (unsigned i = 0; i <= spec.n; ++i) jsys[j].push_back(coded_single(Z, jac[j][i]));

    auto vpow = zech_pow_table(Z, static_cast<uint16_t>(spec.max_degree()));

    // value of a coded system (single polynomial) at element-index point pt
    auto eval_at = [&](const CodedSys& sys, const std::vector<uint64_t>& pt) -> uint32_t {
      uint32_t acc = 0;
      for (const auto& poly : sys.polys)
        for (size_t t = 0; t < poly.coeffs.size(); ++t) {
          uint32_t prod = poly.coeffs[t];
          for (unsigned i = 0; i <= spec.n; ++i) {
            uint16_t e = poly.exps[t * (spec.n + 1) + i];
            prod = Z.mul(prod, vpow[static_cast<size_t>(e) * Q + pt[i]]);
          }
          acc = Z.add(acc, prod);
        }
      return acc;
    };

    auto rank_at = [&](const std::vector<unsigned>& rows,
                       const std::vector<uint64_t>& pt) -> size_t {
      std::vector<std::vector<uint32_t>> M;
      for (unsigned j : rows) {
        std::vector<uint32_t> row(spec.n + 1);
        for (unsigned i = 0; i <= spec.n; ++i) row[i] = eval_at(jsys[j][i], pt);
        M.push_back(std::move(row));
      }
      size_t rank = 0;
      for (unsigned col = 0; col <= spec.n && rank < M.size(); ++col) {
        size_t piv = rank;
        while (piv < M.size() && !M[piv][col]) ++piv;
        if (piv == M.size()) continue;
        std::swap(M[rank], M[piv]);
        uint32_t inv = Z.inv(M[rank][col]);
        for (auto& x : M[rank]) x = Z.mul(x, inv);
        for (size_t i = rank + 1; i < M.size(); ++i) {
          uint32_t c = M[i][col];
          if (!c) continue;
          uint32_t nc = Z.mul(c, minus_one);
          for (unsigned cc = col; cc <= spec.n; ++cc)
            M[i][cc] = Z.add(M[i][cc], Z.mul(nc, M[rank][cc]));
        }
        ++rank;
      }
      return rank;
    };

    std::vector<unsigned> all_rows(spec.r);
    for (unsigned j = 0; j < spec.r; ++j) all_rows[j] = j;

    // scan projective representatives: x_lead = 1, earlier coordinates 0
    std::vector<uint64_t> pt(spec.n + 1, 0);
    for (unsigned lead = 0; lead <= spec.n; ++lead) {
      unsigned nfree = spec.n - lead;
      uint64_t total = ipow(Q, nfree);
      for (uint64_t it = 0; it < total; ++it) {
        uint64_t rest = it;
        for (unsigned i = 0; i < lead; ++i) pt[i] = 0;
        pt[lead] = E.index_of(E.one());
        for (unsigned i = spec.n; i > lead; --i) {
          pt[i] = rest % Q;
          rest /= Q;
        }
        bool on_x = true;
        for (const auto& sys : eqsys)
          if (eval_at(sys, pt)) {
            on_x = false;
            break;
          }
        if (!on_x) continue;
        if (rank_at(all_rows, pt) < spec.r) {
          verdict.smooth = false;
          verdict.depth = k;
          verdict.witness_ext = k;
          std::ostringstream os;
          os << "(";
          for (unsigned i = 0; i <= spec.n; ++i)
            os << (i ? " : " : "") << ext_to_string(E, E.element_at(pt[i]));
          os << ")";
          verdict.witness = os.str();
          verdict.detail = "Jacobi matrix rank < r at a point of X over the degree-" +
                           std::to_string(k) + " extension";
          return verdict;
        }
      }
    }

    // complete-intersection heuristic: proper nonempty equation subsets
    // should keep full Jacobi rank at sampled common zeros off X as well;
    // a failure here is only a warning (it does not witness a singular X)
    if (k == 1 && spec.r > 1) {
      std::mt19937_64 rng(sample_seed);
      for (uint32_t mask = 1; mask + 1 < (1u << spec.r); ++mask) {
        std::vector<unsigned> rows;
        for (unsigned j = 0; j < spec.r; ++j)
          if (mask & (1u << j)) rows.push_back(j);
        unsigned found = 0, tried = 0;
        bool warned = false;
        while (found < 64 && tried < 4096 && !warned) {
          ++tried;
          bool origin = true;
          for (unsigned i = 0; i <= spec.n; ++i) {
            pt[i] = rng() % Q;
            origin = origin && pt[i] == 0;
          }
          if (origin) continue;
          bool zero_all = true;
          for (unsigned j : rows)
            if (eval_at(eqsys[j], pt)) {
              zero_all = false;
              break;
            }
          if (!zero_all) continue;
          ++found;
          if (rank_at(rows, pt) < rows.size()) {
            verdict.detail +=
                "warning: equation subset {";
            for (unsigned j : rows) verdict.detail += std::to_string(j) + ",";
            verdict.detail += "} drops Jacobi rank at a sampled common zero; ";
            warned = true;
          }
        }
      }
    }
  }
  verdict.smooth = true;
  verdict.depth = k_max;
  return verdict;
}

}  // namespace cizeta
