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

#include <cinttypes>
#include <cstdio>

#include "json.hpp"

namespace cizeta {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

long get_uint_field(const json& j, const char* key, long lo, long hi) {
  if (!j.contains(key) || !j[key].is_number_integer())
    bad(std::string("missing or non-integer field '") + key + "'");
  long v = j[key].get<long>();
  if (v < lo || v > hi)
    bad(std::string("field '") + key + "' out of range");
  return v;
}

FqElem coeff_from_json(const FieldCtx& F, const json& c, const std::string& at) {
  if (c.is_number_integer()) return F.from_int(c.get<int64_t>());
  if (c.is_array()) {
    if (c.size() != F.a()) bad(at + ": coefficient list must have length a");
    FqElem e(F.a(), 0);
    for (unsigned i = 0; i < F.a(); ++i) {
      if (!c[i].is_number_integer()) bad(at + ": non-integer coordinate");
      int64_t v = c[i].get<int64_t>() % (int64_t)F.p();
      if (v < 0) v += (int64_t)F.p();
      e[i] = (uint32_t)v;
    }
    return e;
  }
  bad(at + ": coefficient must be an integer or coordinate list");
}

}  // namespace

VarietySpec parse_variety(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    bad(std::string("JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) bad("top-level JSON must be an object");

  long p = get_uint_field(j, "p", 2, 1u << 20);
  long a = j.contains("a") ? get_uint_field(j, "a", 1, 16) : 1;
  long n = get_uint_field(j, "n", 1, 16);
  long r = get_uint_field(j, "r", 1, 8);
  if (r > n) bad("r must not exceed n");

  VarietySpec spec{FieldCtx((uint64_t)p, (unsigned)a), (unsigned)n, (unsigned)r,
                   {}, {}, ""};
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad("label must be a string");
    spec.label = j["label"].get<std::string>();
  }

  if (!j.contains("degrees") || !j["degrees"].is_array() ||
      j["degrees"].size() != (size_t)r)
    bad("degrees must be an array of length r");
  for (const auto& d : j["degrees"]) {
    if (!d.is_number_integer() || d.get<long>() < 1 || d.get<long>() > 64)
      bad("each degree must be an integer in [1, 64]");
    spec.degrees.push_back((unsigned)d.get<long>());
  }

  if (!j.contains("polys") || !j["polys"].is_array() ||
      j["polys"].size() != (size_t)r)
    bad("polys must be an array of length r");
  for (size_t pj = 0; pj < (size_t)r; ++pj) {
    const auto& terms = j["polys"][pj];
    if (!terms.is_array() || terms.empty())
      bad("polys[" + std::to_string(pj) + "] must be a nonempty term array");
    XPoly f;
    for (size_t t = 0; t < terms.size(); ++t) {
      std::string at = "polys[" + std::to_string(pj) + "] term " + std::to_string(t);
      const auto& term = terms[t];
      if (!term.is_array() || term.size() != 2) bad(at + ": expected [coeff, exps]");
      const auto& exps = term[1];
      if (!exps.is_array() || exps.size() != (size_t)n + 1)
        bad(at + ": exponent vector must have length n+1");
      std::vector<uint16_t> e;
      long total = 0;
      for (const auto& x : exps) {
        if (!x.is_number_integer() || x.get<long>() < 0 ||
            x.get<long>() > (long)kMaxExponent)
          bad(at + ": exponents must be small nonnegative integers");
        e.push_back((uint16_t)x.get<long>());
        total += x.get<long>();
      }
      if (total != (long)spec.degrees[pj])
        bad(at + ": degree " + std::to_string(total) + " but f_" +
            std::to_string(pj + 1) + " must be homogeneous of degree " +
            std::to_string(spec.degrees[pj]));
      FqElem c = coeff_from_json(spec.field, term[0], at);
      if (spec.field.is_zero(c)) continue;
      auto it = f.terms.find(e);
      if (it == f.terms.end())
        f.terms.emplace(std::move(e), std::move(c));
      else {
        it->second = spec.field.add(it->second, c);
        if (spec.field.is_zero(it->second)) f.terms.erase(it);
      }
    }
    if (f.terms.empty())
      bad("polys[" + std::to_string(pj) + "] is zero after reduction");
    spec.polys.push_back(std::move(f));
  }
  spec.validate();
  return spec;
}

std::string render_variety(const VarietySpec& spec) {
  json j;
  j["p"] = spec.field.p();
  j["a"] = spec.field.a();
  j["n"] = spec.n;
  j["r"] = spec.r;
  j["degrees"] = spec.degrees;
  json polys = json::array();
  for (const auto& f : spec.polys) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms) {  // map order: canonical
      json coeff;
      if (spec.field.a() == 1)
        coeff = c[0];
      else
        coeff = c;
      terms.push_back(json::array({coeff, e}));
    }
    polys.push_back(std::move(terms));
  }
  j["polys"] = std::move(polys);
  j["label"] = spec.label;
  return j.dump();
}

std::string input_hash(const std::string& canonical) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

void RunReport::set(const std::string& key, std::string value) {
  for (auto& [k, v] : fields_)
    if (k == key) {
      v = std::move(value);
      return;
    }
  fields_.emplace_back(key, std::move(value));
}

void RunReport::set_int(const std::string& key, long long v) {
  set(key, std::to_string(v));
}

void RunReport::set_time(const std::string& key, double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  set("time." + key, buf);
}

const std::string* RunReport::find(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return &v;
  return nullptr;
}

std::string RunReport::render() const {
  std::string out;
  for (const auto& [k, v] : fields_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

std::string RunReport::render_stable() const {
  std::string out;
  for (const auto& [k, v] : fields_) {
    if (k.rfind("time.", 0) == 0) continue;
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace cizeta
