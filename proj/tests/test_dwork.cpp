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

#include "cizeta/dwork.hpp"

#include "doctest.h"

#include "cizeta/counting.hpp"
#include "cizeta/jacobian.hpp"
#include "cizeta/zeta.hpp"
#include "test_util.hpp"

using namespace cizeta;

namespace {

VarietySpec fermat_cubic(uint64_t p) {
  VarietySpec spec{FieldCtx(p, 1), 2, 1, {3}, {}, "fermat-cubic"};
  XPoly f;
  for (unsigned i = 0; i <= 2; ++i) {
    std::vector<uint16_t> e(3, 0);
    e[i] = 3;
    f.terms.emplace(std::move(e), spec.field.one());
  }
  spec.polys.push_back(std::move(f));
  spec.validate();
  return spec;
}

VarietySpec sum_of_squares_surface(uint64_t p) {
  VarietySpec spec{FieldCtx(p, 1), 3, 1, {2}, {}, "quadric-surface"};
  XPoly f;
  for (unsigned i = 0; i <= 3; ++i) {
    std::vector<uint16_t> e(4, 0);
    e[i] = 2;
    f.terms.emplace(std::move(e), spec.field.one());
  }
  spec.polys.push_back(std::move(f));
  spec.validate();
  return spec;
}

PPoly p_from_counts(const VarietySpec& spec, const std::vector<long>& h) {
  long D = 0;
  for (auto v : h) D += v;
  std::vector<uint64_t> counts;
  for (unsigned m = 1; m <= (unsigned)D; ++m)
    counts.push_back(count_projective(spec, m));
  return extract_P(spec, counts, h);
}

// Residue of z mod p^digits as a nonnegative integer.
uint64_t mpz_residue(const mpz_class& z, uint64_t p, int digits) {
  mpz_class m = 1;
  for (int i = 0; i < digits; ++i) m *= (unsigned long)p;
  mpz_class r = z % m;
  if (r < 0) r += m;
  return (uint64_t)mpz_get_ui(r.get_mpz_t());
}

// Smallest s >= 0 with det == P(p^r t) coefficientwise mod p^{N-s}, or -1.
int measured_slack(const PadicCtx& ctx, const std::vector<PVec>& det,
                   const PPoly& P, unsigned r, int N) {
  uint64_t p = ctx.p();
  for (int s = 0; s < N; ++s) {
    int digits = N - s;
    uint64_t mod = 1;
    for (int i = 0; i < digits; ++i) mod *= p;
    bool ok = true;
    for (size_t k = 0; k < det.size() && ok; ++k) {
      mpz_class want = (k < P.c.size()) ? P.c[k] : mpz_class(0);
      for (size_t i = 0; i < r * k; ++i) want *= (unsigned long)p;
      if (det[k][0] % mod != mpz_residue(want, p, digits)) ok = false;
      for (unsigned i = 1; i < ctx.dim() && ok; ++i)
        if (det[k][i] % mod != 0) ok = false;
    }
    if (ok) return s;
  }
  return -1;
}

TopSeries form_as_series(const DworkEngine& eng, const FormKey& k) {
  TopSeries s;
  s.emplace(MonoKey{k.xexp, k.yexp}, eng.ring().one());
  return s;
}

}  // namespace

TEST_CASE("dwork: G series invariants on the Fermat cubic") {
  auto spec = fermat_cubic(7);
  DworkEngine eng(spec, 2);
  const PadicCtx& R = eng.ring();

  MonoKey zero{std::vector<uint16_t>(3, 0), std::vector<uint16_t>(1, 0)};
  auto it = eng.G().find(zero);
  REQUIRE(it != eng.G().end());
  CHECK(R.equal_mod(it->second, R.one(), R.nwork()));

  size_t checked = 0;
  for (const auto& [k, c] : eng.G()) {
    // support: u = 3(k_0,k_1,k_2), |v| = k_0+k_1+k_2
    long kv = k.v[0];
    long su = 0;
    for (unsigned i = 0; i < 3; ++i) {
      CHECK(k.u[i] % 3 == 0);
      su += k.u[i] / 3;
    }
    CHECK(su == kv);
    // stripped valuation: ord_p >= |v|/(p-1), i.e. ord_lambda >= |v|
    long o = R.ord_lambda(c);
    if (o != PadicCtx::kOrdInf) CHECK(o >= kv);
    if (++checked > 400) break;
  }
}

TEST_CASE("dwork: basis monomials reduce to unit coordinate vectors") {
  for (auto* make : {&fermat_cubic, &sum_of_squares_surface}) {
    auto spec = make(make == &fermat_cubic ? 7 : 3);
    DworkEngine eng(spec, 2);
    const PadicCtx& R = eng.ring();
    const auto& keys = eng.basis_keys();
    REQUIRE(!keys.empty());
    for (size_t j = 0; j < keys.size(); ++j) {
      auto red = eng.reduce_to_basis(form_as_series(eng, keys[j]));
      for (size_t i = 0; i < keys.size(); ++i) {
        if (i == j)
          CHECK(R.equal_mod(red.coords[i], R.one(), eng.precision()));
        else
          CHECK(R.equal_mod(red.coords[i], R.zero(), eng.precision()));
      }
      CHECK(red.iterations <= 1);
    }
  }
}

TEST_CASE("dwork: boundary images reduce to zero") {
  auto spec = fermat_cubic(7);
  DworkEngine eng(spec, 3);
  const PadicCtx& R = eng.ring();

  // Graded (n+r)-forms from the boundary machinery satisfy the weight
  // grading by construction; their boundaries must be cohomologically zero.
  std::mt19937_64 rng(2026);
  int built = 0;
  for (long e = 2; e <= 5 && built < 6; ++e) {
    BoundaryPiece bp = boundary_piece(spec, e);
    if (bp.sources.empty()) continue;
    for (int rep = 0; rep < 2 && built < 6; ++rep, ++built) {
      EtaSeries eta;
      for (int t = 0; t < 3; ++t) {
        const FormKey& sk = bp.sources[rng() % bp.sources.size()];
        uint32_t fmask = (uint32_t(1) << spec.slots()) - 1;
        unsigned missing = 0;
        uint32_t absent = fmask & ~sk.diff;
        while (!(absent & (uint32_t(1) << missing))) ++missing;
        EtaKey ek{missing, MonoKey{sk.xexp, sk.yexp}};
        eta[ek] = R.from_int((long)(1 + rng() % 48));
      }
      auto red = eng.reduce_to_basis(eng.apply_boundary(eta));
      for (const auto& c : red.coords)
        CHECK(R.equal_mod(c, R.zero(), eng.precision()));
    }
  }
  CHECK(built >= 4);
}

TEST_CASE("dwork: reduction is linear") {
  auto spec = fermat_cubic(7);
  DworkEngine eng(spec, 3);
  const PadicCtx& R = eng.ring();
  const auto& keys = eng.basis_keys();
  REQUIRE(keys.size() == 2);

  TopSeries w0 = eng.frobenius_on_form(keys[0]);
  TopSeries w1 = eng.frobenius_on_form(keys[1]);
  auto r0 = eng.reduce_to_basis(w0);
  auto r1 = eng.reduce_to_basis(w1);

  // 3*w0 + w1
  TopSeries comb = w1;
  for (const auto& [k, c] : w0) {
    PVec t = R.scale(3, c);
    auto it = comb.find(k);
    if (it == comb.end())
      comb.emplace(k, t);
    else
      it->second = R.add(it->second, t);
  }
  auto rc = eng.reduce_to_basis(comb);
  for (size_t i = 0; i < keys.size(); ++i) {
    PVec want = R.add(R.scale(3, r0.coords[i]), r1.coords[i]);
    CHECK(R.equal_mod(rc.coords[i], want, eng.precision()));
  }
}

TEST_CASE("dwork: Fermat cubic over F_7 matches the zeta factor") {
  auto spec = fermat_cubic(7);
  auto hd = hodge_numbers(spec);
  PPoly P = p_from_counts(spec, hd.h);
  REQUIRE(P.degree() == 2);

  const int N = 3;
  DworkEngine eng(spec, N);
  auto fm = eng.frobenius_matrix();
  REQUIRE(fm.basis_keys.size() == 2);
  auto det = det_one_minus_t(eng.ring(), fm.raw);
  REQUIRE(det.size() == 3);

  int slack = measured_slack(eng.ring(), det, P, spec.r, N);
  CHECK(slack >= 0);
  CHECK(slack <= 1);

  // Column valuations against the weight bound e b (p-1)/p.
  for (size_t j = 0; j < fm.basis_keys.size(); ++j) {
    mpq_class bound = eng.b() * fm.basis_e[j] * 6 / 7;
    bound.canonicalize();
    CHECK(fm.column_min_valuation[j] >= bound);
  }

  auto nb = newton_bound_check(eng, fm, hd.h);
  CHECK(nb.pre_limit != PolygonVerdict::Violation);
  CHECK(nb.limit != PolygonVerdict::Violation);
}

TEST_CASE("dwork: quadric surface over F_3 matches the zeta factor") {
  auto spec = sum_of_squares_surface(3);
  auto hd = hodge_numbers(spec);
  REQUIRE(hd.degree_P() == 1);
  PPoly P = p_from_counts(spec, hd.h);

  const int N = 3;
  DworkEngine eng(spec, N);
  auto fm = eng.frobenius_matrix();
  REQUIRE(fm.basis_keys.size() == 1);
  auto det = det_one_minus_t(eng.ring(), fm.raw);

  int slack = measured_slack(eng.ring(), det, P, spec.r, N);
  CHECK(slack >= 0);
  CHECK(slack <= 1);

  auto nb = newton_bound_check(eng, fm, hd.h);
  CHECK(nb.pre_limit != PolygonVerdict::Violation);
  CHECK(nb.limit != PolygonVerdict::Violation);
}

TEST_CASE("dwork: determinant is independent of the weight normalization") {
  auto spec = fermat_cubic(7);
  const int N = 2;
  DworkEngine e1(spec, N, mpq_class(1, 2));
  DworkEngine e2(spec, N, mpq_class(5, 6));
  auto d1 = det_one_minus_t(e1.ring(), e1.frobenius_matrix().raw);
  auto d2 = det_one_minus_t(e2.ring(), e2.frobenius_matrix().raw);
  REQUIRE(d1.size() == d2.size());
  uint64_t mod = 49;  // compare mod p^N
  for (size_t k = 0; k < d1.size(); ++k)
    for (unsigned i = 0; i < e1.ring().dim(); ++i)
      CHECK(d1[k][i] % mod == d2[k][i] % mod);
}

TEST_CASE("dwork: input validation") {
  auto spec = fermat_cubic(3);  // p divides the degree
  CHECK_THROWS_AS(DworkEngine(spec, 2), InputError);
  auto ok = fermat_cubic(7);
  CHECK_THROWS_AS(DworkEngine(ok, 2, mpq_class(7, 6)), InputError);
  CHECK_THROWS_AS(DworkEngine(ok, 2, std::nullopt, 3), TruncationUncertified);
}

TEST_CASE("dwork: Berkowitz determinant against a known matrix") {
  PadicCtx R(5, 8);
  // M = [[1,2],[3,4]]: det(I - tM) = 1 - 5t - 2t^2
  std::vector<std::vector<PVec>> m{{R.from_int(1), R.from_int(2)},
                                   {R.from_int(3), R.from_int(4)}};
  auto d = det_one_minus_t(R, m);
  REQUIRE(d.size() == 3);
  CHECK(R.equal_mod(d[0], R.from_int(1), 8));
  CHECK(R.equal_mod(d[1], R.from_int(-5), 8));
  CHECK(R.equal_mod(d[2], R.from_int(-2), 8));

  // 3x3 with a zero row mixed in: M = [[2,0,1],[0,0,3],[1,1,1]]
  std::vector<std::vector<PVec>> m3{
      {R.from_int(2), R.from_int(0), R.from_int(1)},
      {R.from_int(0), R.from_int(0), R.from_int(3)},
      {R.from_int(1), R.from_int(1), R.from_int(1)}};
  // det(I - tM) = 1 - 3t - 2t^2 + 6t^3  (trace 3, sum of 2x2 principal
  // minors -2, det M -6)
  auto d3 = det_one_minus_t(R, m3);
  REQUIRE(d3.size() == 4);
  CHECK(R.equal_mod(d3[0], R.from_int(1), 8));
  CHECK(R.equal_mod(d3[1], R.from_int(-3), 8));
  CHECK(R.equal_mod(d3[2], R.from_int(-2), 8));
  CHECK(R.equal_mod(d3[3], R.from_int(6), 8));
}
