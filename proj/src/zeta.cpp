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

#include "cizeta/zeta.hpp"

#include <algorithm>

namespace cizeta {

namespace {

// exp of a rational power series with zero constant term, to degree D
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

// log of a power series with constant term 1, to degree D
std::vector<mpq_class> series_log(const std::vector<mpq_class>& f, long D) {
  std::vector<mpq_class> l(D + 1, 0);
  for (long k = 1; k <= D; ++k) {
    mpq_class acc = 0;
    if (k <= static_cast<long>(f.size()) - 1) acc = mpq_class(k) * f[k];
    for (long j = 1; j < k; ++j)
      if (k - j < static_cast<long>(f.size()))
        acc -= mpq_class(j) * l[j] * f[k - j];
    l[k] = acc / k;
  }
  return l;
}

mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

PPoly extract_P(const VarietySpec& spec, const std::vector<uint64_t>& counts,
                const std::vector<long>& h) {
  long D = 0;
  for (long v : h) D += v;
  if (D < 0) throw InputError("negative Hodge numbers");
  if (static_cast<long>(counts.size()) < D)
    throw InputError("extract_P needs counts N_1..N_D, D = " + std::to_string(D));
  PPoly P;
  P.c.assign(D + 1, 0);
  P.c[0] = 1;
  if (D == 0) return P;

  const mpz_class q(static_cast<unsigned long>(spec.field.size()));
  const long nr = static_cast<long>(spec.n) - static_cast<long>(spec.r);
  const int sign = (nr - 1) % 2 == 0 ? 1 : -1;  // (-1)^{n-r-1}

  // log Z + sum_{i=0}^{n-r} log(1 - q^i t) = sign * log P
  std::vector<mpq_class> s(D + 1, 0);
  for (long m = 1; m <= D; ++m) {
    mpz_class acc(static_cast<unsigned long>(counts[m - 1]));
    for (long i = 0; i <= nr; ++i)
      acc -= mpz_pow(q, static_cast<unsigned long>(i * m));
    s[m] = mpq_class(acc) / m;
    if (sign < 0) s[m] = -s[m];
  }
  auto e = series_exp(s, D);
  for (long i = 1; i <= D; ++i) {
    e[i].canonicalize();
    if (e[i].get_den() != 1)
      throw NonIntegerCoefficient(
          "coefficient " + std::to_string(i) +
          " of P(t) is not an integer: the h_e are wrong, the variety is not "
          "smooth, or the point counts are buggy");
    P.c[i] = e[i].get_num();
  }
  // |c_i| <= C(D,i) q^{i(n-r)/2}: compare squares to stay in integers
  for (long i = 0; i <= D; ++i) {
    mpz_class lhs = P.c[i] * P.c[i];
    mpz_class bound = binomial(D, i);
    mpz_class rhs = bound * bound * mpz_pow(q, static_cast<unsigned long>(i * nr));
    if (lhs > rhs)
      throw BoundViolation(
          "coefficient " + std::to_string(i) +
          " of P(t) violates the Weil bound: the h_e are wrong, the variety is "
          "not smooth, or the point counts are buggy");
  }
  return P;
}

mpq_class Polygon::value_at(const mpq_class& x) const {
  if (x < vertices.front().first || x > vertices.back().first)
    throw InputError("polygon evaluated outside its range");
  for (size_t i = 1; i < vertices.size(); ++i) {
    if (x > vertices[i].first) continue;
    const auto& [x0, y0] = vertices[i - 1];
    const auto& [x1, y1] = vertices[i];
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }
  return vertices.back().second;
}

std::vector<mpq_class> Polygon::slopes() const {
  std::vector<mpq_class> out;
  for (size_t i = 1; i < vertices.size(); ++i) {
    mpq_class run = vertices[i].first - vertices[i - 1].first;
    mpq_class slope = (vertices[i].second - vertices[i - 1].second) / run;
    long steps = static_cast<long>(mpz_get_si(mpq_class(run).get_num_mpz_t()));
    for (long k = 0; k < steps; ++k) out.push_back(slope);
  }
  return out;
}

Polygon lower_hull(std::vector<std::pair<mpq_class, mpq_class>> pts) {
  Polygon poly;
  for (const auto& pt : pts) {
    while (poly.vertices.size() >= 2) {
      const auto& a = poly.vertices[poly.vertices.size() - 2];
      const auto& b = poly.vertices.back();
      // keep b only if it is strictly below segment a--pt
      mpq_class cross = (b.first - a.first) * (pt.second - a.second) -
                        (pt.first - a.first) * (b.second - a.second);
      if (cross > 0) break;
      poly.vertices.pop_back();
    }
    poly.vertices.push_back(pt);
  }
  return poly;
}

Polygon newton_polygon(const PPoly& P, uint64_t p, unsigned a) {
  std::vector<std::pair<mpq_class, mpq_class>> pts;
  long D = P.degree();
  const mpz_class pz(static_cast<unsigned long>(p));
  for (long i = 0; i <= D; ++i) {
    if (P.c[i] == 0) continue;  // ord = +infinity, omitted
    mpz_class v = P.c[i];
    unsigned long ord = 0;
    while (mpz_divisible_p(v.get_mpz_t(), pz.get_mpz_t())) {
      v /= pz;
      ++ord;
    }
    pts.emplace_back(mpq_class(i), mpq_class(static_cast<unsigned long>(ord), a));
  }
  return lower_hull(std::move(pts));
}

Polygon hodge_polygon(const std::vector<long>& h, unsigned r) {
  Polygon poly;
  mpq_class x = 0, y = 0;
  poly.vertices.emplace_back(x, y);
  for (size_t e = r; e < h.size(); ++e) {
    if (h[e] <= 0) continue;
    x += h[e];
    y += mpq_class(h[e]) * (static_cast<long>(e) - static_cast<long>(r));
    poly.vertices.emplace_back(x, y);
  }
  return poly;
}

PolygonCompare lies_on_or_above(const Polygon& upper, const Polygon& lower) {
  if (upper.end_abscissa() != lower.end_abscissa())
    throw DegreeMismatch("polygons end at different abscissas");
  std::vector<mpq_class> xs;
  for (const auto& v : upper.vertices) xs.push_back(v.first);
  for (const auto& v : lower.vertices) xs.push_back(v.first);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  bool equal = true;
  for (const auto& x : xs) {
    mpq_class u = upper.value_at(x), l = lower.value_at(x);
    if (u < l) return {PolygonVerdict::Violation, x};
    if (u != l) equal = false;
  }
  return {equal ? PolygonVerdict::HoldsWithEquality : PolygonVerdict::Holds,
          mpq_class(0)};
}

std::vector<mpz_class> rederive_counts(const VarietySpec& spec, const PPoly& P,
                                       unsigned m_max) {
  long D = static_cast<long>(P.c.size()) - 1;
  long T = std::max<long>(m_max, D);
  std::vector<mpq_class> f(P.c.size());
  for (size_t i = 0; i < P.c.size(); ++i) f[i] = mpq_class(P.c[i]);
  auto logp = series_log(f, T);
  const mpz_class q(static_cast<unsigned long>(spec.field.size()));
  const long nr = static_cast<long>(spec.n) - static_cast<long>(spec.r);
  const int sign = (nr - 1) % 2 == 0 ? 1 : -1;
  std::vector<mpz_class> out;
  for (unsigned m = 1; m <= m_max; ++m) {
    mpq_class nm = mpq_class(sign) * mpq_class(m) * logp[m];
    for (long i = 0; i <= nr; ++i) nm += mpq_class(mpz_pow(q, i * m));
    nm.canonicalize();
    if (nm.get_den() != 1)
      throw NonIntegerCoefficient("re-derived N_m is not an integer (bug)");
    out.push_back(nm.get_num());
  }
  return out;
}

bool newton_symmetric(const Polygon& newton, unsigned n, unsigned r) {
  auto s = newton.slopes();
  auto t = s;
  const mpq_class w(static_cast<long>(n) - static_cast<long>(r));
  for (auto& v : t) v = w - v;
  std::sort(t.begin(), t.end());
  std::sort(s.begin(), s.end());
  return s == t;
}

}  // namespace cizeta
