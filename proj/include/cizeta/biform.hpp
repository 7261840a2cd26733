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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cizeta/field.hpp"

namespace cizeta {

// Sparse bigraded differential forms over F_q in x_0..x_n, y_1..y_r, with
// differentials encoded as a bitmask over the n+1+r slots in canonical
// order dx_0 < ... < dx_n < dy_1 < ... < dy_r.  x_i and dx_i carry
// bidegree (1,0); y_j and dy_j carry (-d_j, 1).

constexpr uint16_t kMaxExponent = 0xffff;

// A homogeneous polynomial in x_0..x_n: exponent vector -> coefficient.
struct XPoly {
  std::map<std::vector<uint16_t>, FqElem> terms;
};

struct VarietySpec {
  FieldCtx field;
  unsigned n = 0;  // ambient projective dimension
  unsigned r = 0;  // codimension
  std::vector<unsigned> degrees;
  std::vector<XPoly> polys;
  std::string label;

  // Validates homogeneity, degree, nonconstancy, 1 <= r <= n.
  void validate() const;
  unsigned slots() const { return n + 1 + r; }
  unsigned degree_product_mod_p() const;
  bool exceptional_case() const;  // p | d_1...d_r and n+r odd
  unsigned max_degree() const;
};

struct FormKey {
  std::vector<uint16_t> xexp;  // length n+1
  std::vector<uint16_t> yexp;  // length r
  uint32_t diff = 0;           // bitmask, bit i < n+1 for dx_i, bit n+1+j for dy_{j+1}

  auto operator<=>(const FormKey&) const = default;
};

struct BiForm {
  std::map<FormKey, FqElem> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const BiForm&) const = default;
};

inline int popcount_below(uint32_t mask, unsigned slot) {
  return __builtin_popcount(mask & ((1u << slot) - 1));
}

// Term-level bidegree per the grading rules above.
std::pair<long, long> bidegree(const VarietySpec& spec, const FormKey& key);

// Uniform exterior degree |S| of a pure-degree form; throws on mixed degree.
unsigned form_degree(const BiForm& omega);

void add_term(BiForm& f, const VarietySpec& spec, FormKey key, const FqElem& c);
BiForm add(const VarietySpec& spec, const BiForm& a, const BiForm& b);
BiForm scale(const VarietySpec& spec, const FqElem& c, const BiForm& a);
BiForm negate(const VarietySpec& spec, const BiForm& a);

// Multiply a form by the monomial x^dx * y^dy.
BiForm mul_monomial(const VarietySpec& spec, const BiForm& a,
                    const std::vector<uint16_t>& dx, const std::vector<uint16_t>& dy);

// dF as a 1-form, dF = sum_i (sum_j y_j df_j/dx_i) dx_i + sum_j f_j dy_j.
BiForm differential_of_F(const VarietySpec& spec);

// omega -> dF ^ omega (bidegree shift (0,1)).
BiForm wedge_dF(const VarietySpec& spec, const BiForm& omega);

// The contraction map: dx-slots contribute (-1)^{s-1} x_{i_s}, dy-slots
// contribute (-1)^{l+t-1}(-d_{j_t} y_{j_t}).  Lowers form degree by 1.
BiForm theta(const VarietySpec& spec, const BiForm& omega);

std::string to_string(const VarietySpec& spec, const BiForm& f);
std::string monomial_form_to_string(const VarietySpec& spec, const FormKey& key);

}  // namespace cizeta
