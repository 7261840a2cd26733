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

#include "cizeta/report.hpp"

#include "doctest.h"
#include "test_util.hpp"

using namespace cizeta;

namespace {

const char* kFermat = R"({
  "p": 7, "a": 1, "n": 2, "r": 1, "degrees": [3],
  "polys": [[[1, [3,0,0]], [1, [0,3,0]], [1, [0,0,3]]]],
  "label": "fermat-cubic"
})";

}  // namespace

TEST_CASE("report: parse a well-formed variety") {
  VarietySpec spec = parse_variety(kFermat);
  CHECK(spec.field.p() == 7);
  CHECK(spec.field.a() == 1);
  CHECK(spec.n == 2);
  CHECK(spec.r == 1);
  CHECK(spec.degrees == std::vector<unsigned>{3});
  CHECK(spec.polys[0].terms.size() == 3);
  CHECK(spec.label == "fermat-cubic");
}

TEST_CASE("report: canonical form round-trips") {
  VarietySpec spec = parse_variety(kFermat);
  std::string canon = render_variety(spec);
  VarietySpec again = parse_variety(canon);
  CHECK(render_variety(again) == canon);
  CHECK(input_hash(canon) == input_hash(canon));
  CHECK(input_hash(canon).size() == 16);

  // random specs round-trip as well
  std::mt19937_64 rng(99);
  for (int i = 0; i < 25; ++i) {
    VarietySpec s = testutil::random_spec(rng);
    std::string c1 = render_variety(s);
    CHECK(render_variety(parse_variety(c1)) == c1);
  }
}

TEST_CASE("report: negative and repeated coefficients normalize") {
  // -6 == 1 mod 7; the two x0^3 terms merge, 3+(-3) y-part cancels to zero
  const char* text = R"({
    "p": 7, "a": 1, "n": 2, "r": 1, "degrees": [3],
    "polys": [[[ -6, [3,0,0]], [3, [0,3,0]], [-3, [0,3,0]], [2, [0,0,3]]]],
    "label": ""
  })";
  VarietySpec spec = parse_variety(text);
  CHECK(spec.polys[0].terms.size() == 2);
  auto it = spec.polys[0].terms.find({3, 0, 0});
  REQUIRE(it != spec.polys[0].terms.end());
  CHECK(it->second == spec.field.from_int(1));
}

TEST_CASE("report: malformed inputs raise InputError with location") {
  auto expect_fail = [](const char* text, const char* needle) {
    try {
      parse_variety(text);
      std::string msg = std::string("expected InputError for ") + needle;
      FAIL_CHECK(msg.c_str());
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  // inhomogeneous term
  expect_fail(R"({"p":7,"a":1,"n":2,"r":1,"degrees":[3],
                  "polys":[[[1,[3,0,0]],[1,[0,2,0]]]],"label":""})",
              "term 1");
  // wrong exponent length
  expect_fail(R"({"p":7,"a":1,"n":2,"r":1,"degrees":[3],
                  "polys":[[[1,[3,0]]]],"label":""})",
              "length n+1");
  // degrees length mismatch
  expect_fail(R"({"p":7,"a":1,"n":2,"r":2,"degrees":[3],
                  "polys":[[[1,[3,0,0]]],[[1,[1,0,0]]]],"label":""})",
              "degrees");
  // zero polynomial after cancellation
  expect_fail(R"({"p":7,"a":1,"n":2,"r":1,"degrees":[3],
                  "polys":[[[7,[3,0,0]]]],"label":""})",
              "zero");
  // not JSON
  expect_fail("{oops", "parse failure");
}

TEST_CASE("report: stable rendering and time-line filtering") {
  RunReport rep;
  rep.set("input.label", "demo");
  rep.set_int("hodge.degree_P", 2);
  rep.set_time("count", 1.234);
  rep.set("verdict", "holds");
  rep.set_int("hodge.degree_P", 2);  // overwrite keeps position

  std::string full = rep.render();
  CHECK(full ==
        "input.label = demo\nhodge.degree_P = 2\ntime.count = 1.234\n"
        "verdict = holds\n");
  CHECK(rep.render_stable() ==
        "input.label = demo\nhodge.degree_P = 2\nverdict = holds\n");
  REQUIRE(rep.find("verdict") != nullptr);
  CHECK(*rep.find("verdict") == "holds");
  CHECK(rep.find("missing") == nullptr);

  RunReport rep2;
  rep2.set("input.label", "demo");
  rep2.set_int("hodge.degree_P", 2);
  rep2.set_time("count", 9.876);  // different timing
  rep2.set("verdict", "holds");
  CHECK(rep.render_stable() == rep2.render_stable());
}
