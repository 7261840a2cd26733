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

#include "cizeta/biform.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cizeta;

namespace {

FormKey make_key(const VarietySpec& spec, std::vector<uint16_t> x,
                 std::vector<uint16_t> y, std::vector<unsigned> slots) {
  FormKey k;
  k.xexp = std::move(x);
  k.yexp = std::move(y);
  for (auto s : slots) k.diff |= 1u << s;
  (void)spec;
  return k;
}

BiForm single(const VarietySpec& spec, int64_t c, std::vector<uint16_t> x,
              std::vector<uint16_t> y, std::vector<unsigned> slots) {
  BiForm f;
  add_term(f, spec, make_key(spec, std::move(x), std::move(y), std::move(slots)),
           spec.field.from_int(c));
  return f;
}

// Fermat cubic in P^2 over F_p.
VarietySpec fermat_cubic(uint64_t p) {
  VarietySpec spec{FieldCtx(p, 1), 2, 1, {3}, {}, "fermat_cubic"};
  XPoly f;
  f.terms[{3, 0, 0}] = spec.field.one();
  f.terms[{0, 3, 0}] = spec.field.one();
  f.terms[{0, 0, 3}] = spec.field.one();
  spec.polys.push_back(f);
  spec.validate();
  return spec;
}

}  // namespace

TEST_CASE("bidegree examples (r=1, d=3, n=2)") {
  auto spec = fermat_cubic(7);
  // x_0^2 y_1, 0-form
  CHECK(bidegree(spec, make_key(spec, {2, 0, 0}, {1}, {})) == std::pair<long, long>{-1, 1});
  // dx0 dx1 dx2 dy1
  CHECK(bidegree(spec, make_key(spec, {0, 0, 0}, {0}, {0, 1, 2, 3})) ==
        std::pair<long, long>{0, 1});
  // x_0^3 y_1 * vol
  CHECK(bidegree(spec, make_key(spec, {3, 0, 0}, {1}, {0, 1, 2, 3})) ==
        std::pair<long, long>{0, 2});
}

TEST_CASE("wedge_dF on the n=0 toy F = y_1 x_0") {
  // not a valid variety (r > n), but the wedge algebra does not care
  VarietySpec spec{FieldCtx(5, 1), 0, 1, {1}, {}, ""};
  XPoly f;
  f.terms[{1}] = spec.field.one();
  spec.polys.push_back(f);

  BiForm one = single(spec, 1, {0}, {0}, {});
  BiForm dF = wedge_dF(spec, one);
  BiForm expect = add(spec, single(spec, 1, {0}, {1}, {0}),   // y_1 dx0
                      single(spec, 1, {1}, {0}, {1}));        // x_0 dy1
  CHECK(dF == expect);

  BiForm dx0 = single(spec, 1, {0}, {0}, {0});
  // dF ^ dx0 = x_0 dy1 ^ dx0 = -x_0 dx0 dy1
  CHECK(wedge_dF(spec, dx0) == single(spec, -1, {1}, {0}, {0, 1}));

  CHECK(wedge_dF(spec, dF).is_zero());
}

TEST_CASE("theta examples (r=1, d=3)") {
  auto spec = fermat_cubic(7);
  // theta(dx0 dy1) = x0 dy1 + 3 y1 dx0
  BiForm in = single(spec, 1, {0, 0, 0}, {0}, {0, 3});
  BiForm expect = add(spec, single(spec, 1, {1, 0, 0}, {0}, {3}),
                      single(spec, 3, {0, 0, 0}, {1}, {0}));
  CHECK(theta(spec, in) == expect);

  // theta(dx0 dx1) = x0 dx1 - x1 dx0
  BiForm in2 = single(spec, 1, {0, 0, 0}, {0}, {0, 1});
  BiForm expect2 = add(spec, single(spec, 1, {1, 0, 0}, {0}, {1}),
                       single(spec, -1, {0, 1, 0}, {0}, {0}));
  CHECK(theta(spec, in2) == expect2);

  // theta(theta(dx0 dx1 dy1)) = 0
  BiForm in3 = single(spec, 1, {0, 0, 0}, {0}, {0, 1, 3});
  CHECK(theta(spec, theta(spec, in3)).is_zero());
}

TEST_CASE("theta and wedge structural properties") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 60; ++iter) {
    auto spec = testutil::random_spec(rng);
    unsigned k = 1 + rng() % spec.slots();
    BiForm w = testutil::random_form(spec, k, rng);

    CHECK(theta(spec, theta(spec, w)).is_zero());
    CHECK(wedge_dF(spec, wedge_dF(spec, w)).is_zero());

    // theta(dF ^ w) = -dF ^ theta(w)
    BiForm lhs = theta(spec, wedge_dF(spec, w));
    BiForm rhs = negate(spec, wedge_dF(spec, theta(spec, w)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("theta(dF) = 0 exactly (Euler identity)") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 40; ++iter) {
    auto spec = testutil::random_spec(rng);
    CHECK(theta(spec, differential_of_F(spec)).is_zero());
  }
}

TEST_CASE("bidegree additive under monomial operations") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 40; ++iter) {
    auto spec = testutil::random_spec(rng);
    BiForm w = testutil::random_form(spec, 1 + rng() % spec.slots(), rng);
    std::vector<uint16_t> mx(spec.n + 1), my(spec.r);
    for (auto& e : mx) e = static_cast<uint16_t>(rng() % 3);
    for (auto& e : my) e = static_cast<uint16_t>(rng() % 3);
    FormKey mono;
    mono.xexp = mx;
    mono.yexp = my;
    auto [m1, m2] = bidegree(spec, mono);
    BiForm shifted = mul_monomial(spec, w, mx, my);
    auto sit = shifted.terms.begin();
    for (const auto& [key, c] : w.terms) {
      auto [e1, e2] = bidegree(spec, key);
      auto [s1, s2] = bidegree(spec, sit->first);
      CHECK(s1 == e1 + m1);
      CHECK(s2 == e2 + m2);
      ++sit;
    }
  }
}

TEST_CASE("wedge_dF shifts bidegree by (0,1)") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 30; ++iter) {
    auto spec = testutil::random_spec(rng);
    FormKey mono;
    mono.xexp.assign(spec.n + 1, 1);
    mono.yexp.assign(spec.r, 1);
    BiForm w;
    add_term(w, spec, mono, spec.field.one());
    auto [e1, e2] = bidegree(spec, mono);
    BiForm dw = wedge_dF(spec, w);
    for (const auto& [key, c] : dw.terms) {
      auto [f1, f2] = bidegree(spec, key);
      CHECK(f1 == e1);
      CHECK(f2 == e2 + 1);
    }
  }
}

TEST_CASE("spec validation rejects bad input") {
  VarietySpec bad{FieldCtx(5, 1), 2, 1, {2}, {}, ""};
  XPoly f;
  f.terms[{1, 0, 0}] = bad.field.one();  // degree 1, claimed 2
  bad.polys.push_back(f);
  CHECK_THROWS_AS(bad.validate(), InputError);
}
