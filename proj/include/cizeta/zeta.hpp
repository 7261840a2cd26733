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
#include <utility>
#include <vector>

#include "cizeta/biform.hpp"

namespace cizeta {

// The interesting factor P(t) of the zeta function,
//   Z(X/F_q; t) = P(t)^{(-1)^{n-r-1}} / ((1-t)(1-qt)...(1-q^{n-r}t)),
// with exact integer coefficients, c_0 = 1, deg P = sum of the h_e.
struct PPoly {
  std::vector<mpz_class> c;
  long degree() const {
    long d = static_cast<long>(c.size()) - 1;
    while (d > 0 && c[d] == 0) --d;
    return d;
  }
};

// Recovers P(t) from the projective counts N_1..N_D (D = sum h_e) by exact
// series manipulation; asserts integrality and the coefficient bound
// |c_i| <= C(D,i) q^{i(n-r)/2}.
PPoly extract_P(const VarietySpec& spec, const std::vector<uint64_t>& counts,
                const std::vector<long>& h);

// Lower-convex polygon given by its vertices, starting at (0,0).
struct Polygon {
  std::vector<std::pair<mpq_class, mpq_class>> vertices;
  mpq_class end_abscissa() const { return vertices.back().first; }
  // value of the piecewise-linear function at x (must be within range)
  mpq_class value_at(const mpq_class& x) const;
  std::vector<mpq_class> slopes() const;  // one slope per unit abscissa
};

// Lower convex hull of points given in increasing abscissa order.
Polygon lower_hull(std::vector<std::pair<mpq_class, mpq_class>> pts);

// Newton polygon of P with respect to ord_q, ord_q q = 1 (so ord_p / a).
Polygon newton_polygon(const PPoly& P, uint64_t p, unsigned a);

// Hodge polygon: slope e - r with multiplicity h_e, e = r..n.
Polygon hodge_polygon(const std::vector<long>& h, unsigned r);

enum class PolygonVerdict { Holds, HoldsWithEquality, Violation };

struct PolygonCompare {
  PolygonVerdict verdict = PolygonVerdict::Violation;
  mpq_class abscissa;  // first failing abscissa on Violation
};

// Checks that `upper` lies on or above `lower` at every vertex abscissa of
// both polygons; throws DegreeMismatch when the end abscissas differ.
PolygonCompare lies_on_or_above(const Polygon& upper, const Polygon& lower);

// Re-derives N_m from P(t) and the zeta denominator (consistency check).
std::vector<mpz_class> rederive_counts(const VarietySpec& spec, const PPoly& P,
                                       unsigned m_max);

// Newton slope multiset symmetry s <-> (n - r) - s (functional equation;
// verified empirically on smooth inputs).
bool newton_symmetric(const Polygon& newton, unsigned n, unsigned r);

}  // namespace cizeta
