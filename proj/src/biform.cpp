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

#include <sstream>

namespace cizeta {

void VarietySpec::validate() const {
  if (r < 1 || r > n) throw InputError("require 1 <= r <= n");
  if (degrees.size() != r || polys.size() != r)
    throw InputError("need exactly r degrees and r polynomials");
  for (unsigned j = 0; j < r; ++j) {
    if (degrees[j] == 0) throw InputError("degrees must be positive");
    if (polys[j].terms.empty())
      throw InputError("f_" + std::to_string(j + 1) + " is zero");
    for (const auto& [e, c] : polys[j].terms) {
      if (e.size() != n + 1)
        throw InputError("exponent vector length mismatch in f_" + std::to_string(j + 1));
      unsigned total = 0;
      for (auto a : e) total += a;
      if (total != degrees[j])
        throw InputError("f_" + std::to_string(j + 1) +
                         " is not homogeneous of degree " + std::to_string(degrees[j]));
      if (field.is_zero(c))
        throw InputError("stored zero coefficient in f_" + std::to_string(j + 1));
    }
  }
}

unsigned VarietySpec::degree_product_mod_p() const {
  uint64_t prod = 1;
  for (auto d : degrees) prod = prod * (d % field.p()) % field.p();
  return static_cast<unsigned>(prod);
}

bool VarietySpec::exceptional_case() const {
  return degree_product_mod_p() == 0 && (n + r) % 2 == 1;
}

unsigned VarietySpec::max_degree() const {
  unsigned d = 0;
  for (auto dj : degrees) d = std::max(d, dj);
  return d;
}

std::pair<long, long> bidegree(const VarietySpec& spec, const FormKey& key) {
  long e1 = 0, e2 = 0;
  for (auto a : key.xexp) e1 += a;
  for (unsigned j = 0; j < spec.r; ++j) {
    e1 -= static_cast<long>(key.yexp[j]) * spec.degrees[j];
    e2 += key.yexp[j];
  }
  for (unsigned s = 0; s < spec.slots(); ++s) {
    if (!(key.diff & (1u << s))) continue;
    if (s <= spec.n) {
      e1 += 1;  // dx_i
    } else {
      e1 -= spec.degrees[s - spec.n - 1];  // dy_j
      e2 += 1;
    }
  }
  return {e1, e2};
}

unsigned form_degree(const BiForm& omega) {
  if (omega.terms.empty()) return 0;
  unsigned k = static_cast<unsigned>(__builtin_popcount(omega.terms.begin()->first.diff));
  for (const auto& [key, c] : omega.terms)
    if (static_cast<unsigned>(__builtin_popcount(key.diff)) != k)
      throw Error("mixed exterior degree in pure-degree form");
  return k;
}

void add_term(BiForm& f, const VarietySpec& spec, FormKey key, const FqElem& c) {
  if (spec.field.is_zero(c)) return;
  auto it = f.terms.find(key);
  if (it == f.terms.end()) {
    f.terms.emplace(std::move(key), c);
  } else {
    it->second = spec.field.add(it->second, c);
    if (spec.field.is_zero(it->second)) f.terms.erase(it);
  }
}

BiForm add(const VarietySpec& spec, const BiForm& a, const BiForm& b) {
  BiForm out = a;
  for (const auto& [key, c] : b.terms) add_term(out, spec, key, c);
  return out;
}

BiForm scale(const VarietySpec& spec, const FqElem& c, const BiForm& a) {
  BiForm out;
  if (spec.field.is_zero(c)) return out;
  for (const auto& [key, v] : a.terms) {
    auto cv = spec.field.mul(c, v);
    if (!spec.field.is_zero(cv)) out.terms.emplace(key, cv);
  }
  return out;
}

BiForm negate(const VarietySpec& spec, const BiForm& a) {
  BiForm out;
  for (const auto& [key, v] : a.terms) out.terms.emplace(key, spec.field.neg(v));
  return out;
}

namespace {

void bump_exponent(uint16_t& e, unsigned by) {
  if (static_cast<unsigned>(e) + by > kMaxExponent) throw TooLarge("exponent overflow");
  e = static_cast<uint16_t>(e + by);
}

}  // namespace

BiForm mul_monomial(const VarietySpec& spec, const BiForm& a,
                    const std::vector<uint16_t>& dx, const std::vector<uint16_t>& dy) {
  BiForm out;
  for (const auto& [key, c] : a.terms) {
    FormKey k = key;
    for (unsigned i = 0; i <= spec.n; ++i) bump_exponent(k.xexp[i], dx[i]);
    for (unsigned j = 0; j < spec.r; ++j) bump_exponent(k.yexp[j], dy[j]);
    out.terms.emplace(std::move(k), c);
  }
  return out;
}

namespace {

// Left-wedge a single differential slot onto a term, with the transposition
// sign for restoring canonical slot order.  Returns false when the slot is
// already present.
bool wedge_slot(FormKey& key, unsigned slot, bool& flip) {
  uint32_t bit = 1u << slot;
  if (key.diff & bit) return false;
  flip = (popcount_below(key.diff, slot) % 2) != 0;
  key.diff |= bit;
  return true;
}

XPoly partial_x(const VarietySpec& spec, const XPoly& f, unsigned i) {
  XPoly out;
  for (const auto& [e, c] : f.terms) {
    if (e[i] == 0) continue;
    auto cc = spec.field.scale(e[i], c);
    if (spec.field.is_zero(cc)) continue;
    auto e2 = e;
    e2[i] -= 1;
    out.terms.emplace(std::move(e2), std::move(cc));
  }
  return out;
}

}  // namespace

BiForm differential_of_F(const VarietySpec& spec) {
  BiForm dF;
  // sum_i (sum_j y_j df_j/dx_i) dx_i
  for (unsigned i = 0; i <= spec.n; ++i) {
    for (unsigned j = 0; j < spec.r; ++j) {
      XPoly dfi = partial_x(spec, spec.polys[j], i);
      for (const auto& [e, c] : dfi.terms) {
        FormKey key;
        key.xexp = e;
        key.yexp.assign(spec.r, 0);
        key.yexp[j] = 1;
        key.diff = 1u << i;
        add_term(dF, spec, std::move(key), c);
      }
    }
  }
  // sum_j f_j dy_j
  for (unsigned j = 0; j < spec.r; ++j) {
    for (const auto& [e, c] : spec.polys[j].terms) {
      FormKey key;
      key.xexp = e;
      key.yexp.assign(spec.r, 0);
      key.diff = 1u << (spec.n + 1 + j);
      add_term(dF, spec, std::move(key), c);
    }
  }
  return dF;
}

BiForm wedge_dF(const VarietySpec& spec, const BiForm& omega) {
  form_degree(omega);  // reject mixed-degree input
  BiForm dF = differential_of_F(spec);
  BiForm out;
  for (const auto& [dkey, dc] : dF.terms) {
    unsigned slot = static_cast<unsigned>(__builtin_ctz(dkey.diff));
    for (const auto& [okey, oc] : omega.terms) {
      FormKey key = okey;
      bool flip = false;
      if (!wedge_slot(key, slot, flip)) continue;
      for (unsigned i = 0; i <= spec.n; ++i) bump_exponent(key.xexp[i], dkey.xexp[i]);
      for (unsigned j = 0; j < spec.r; ++j) bump_exponent(key.yexp[j], dkey.yexp[j]);
      FqElem c = spec.field.mul(dc, oc);
      if (flip) c = spec.field.neg(c);
      add_term(out, spec, std::move(key), c);
    }
  }
  return out;
}

BiForm theta(const VarietySpec& spec, const BiForm& omega) {
  BiForm out;
  for (const auto& [key, c] : omega.terms) {
    // dx-slots first (positions s = 1..l), then dy-slots (t = 1..m)
    unsigned l = 0;
    for (unsigned i = 0; i <= spec.n; ++i)
      if (key.diff & (1u << i)) ++l;
    unsigned s = 0;
    for (unsigned i = 0; i <= spec.n; ++i) {
      if (!(key.diff & (1u << i))) continue;
      ++s;
      FormKey k = key;
      k.diff &= ~(1u << i);
      bump_exponent(k.xexp[i], 1);
      FqElem cc = (s % 2 == 1) ? c : spec.field.neg(c);
      add_term(out, spec, std::move(k), cc);
    }
    unsigned t = 0;
    for (unsigned j = 0; j < spec.r; ++j) {
      unsigned slot = spec.n + 1 + j;
      if (!(key.diff & (1u << slot))) continue;
      ++t;
      FormKey k = key;
      k.diff &= ~(1u << slot);
      bump_exponent(k.yexp[j], 1);
      // (-1)^{l+t-1} * (-d_j) = (-1)^{l+t} d_j
      FqElem cc = spec.field.scale(spec.degrees[j], c);
      if ((l + t) % 2 == 1) cc = spec.field.neg(cc);
      add_term(out, spec, std::move(k), cc);
    }
  }
  return out;
}

std::string monomial_form_to_string(const VarietySpec& spec, const FormKey& key) {
  std::ostringstream os;
  bool first = true;
  auto put = [&](const std::string& s) {
    if (!first) os << "*";
    os << s;
    first = false;
  };
  for (unsigned i = 0; i <= spec.n; ++i)
    if (key.xexp[i]) put("x" + std::to_string(i) + (key.xexp[i] > 1 ? "^" + std::to_string(key.xexp[i]) : ""));
  for (unsigned j = 0; j < spec.r; ++j)
    if (key.yexp[j]) put("y" + std::to_string(j + 1) + (key.yexp[j] > 1 ? "^" + std::to_string(key.yexp[j]) : ""));
  if (first) os << "1";
  for (unsigned i = 0; i <= spec.n; ++i)
    if (key.diff & (1u << i)) os << " dx" << i;
  for (unsigned j = 0; j < spec.r; ++j)
    if (key.diff & (1u << (spec.n + 1 + j))) os << " dy" << (j + 1);
  return os.str();
}

std::string to_string(const VarietySpec& spec, const BiForm& f) {
  if (f.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : f.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(";
    for (unsigned i = 0; i < c.size(); ++i) {
      if (i) os << ",";
      os << c[i];
    }
    os << ")*" << monomial_form_to_string(spec, key);
  }
  return os.str();
}

}  // namespace cizeta
