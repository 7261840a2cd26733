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

#include <string>
#include <utility>
#include <vector>

#include "cizeta/biform.hpp"

namespace cizeta {

inline constexpr const char* kVersion = "0.1.0";

// JSON description of a variety:
//   { "p": 7, "a": 1, "n": 2, "r": 1, "degrees": [3],
//     "polys": [ [ [1, [3,0,0]], [1, [0,3,0]], [1, [0,0,3]] ] ],
//     "label": "fermat-cubic" }
// Coefficients are integers for prime fields; for a > 1, a length-a integer
// list of coordinates on the stored power basis.  Throws InputError with a
// per-term message for inhomogeneous or malformed input.
VarietySpec parse_variety(const std::string& json_text);

// Canonical (byte-stable) JSON for the spec; parse(render(s)) reproduces s.
std::string render_variety(const VarietySpec& spec);

// FNV-1a 64-bit hash of the canonical form, as 16 hex digits.
std::string input_hash(const std::string& canonical);

// Ordered key-value run report.  Keys starting with "time." carry wall-clock
// measurements and are the only lines allowed to differ between identical
// runs; everything else renders byte-identically.
class RunReport {
 public:
  void set(const std::string& key, std::string value);
  void set_int(const std::string& key, long long v);
  void set_time(const std::string& key, double seconds);

  const std::string* find(const std::string& key) const;
  std::string render() const;

  // render() with the time.* lines removed, for determinism comparisons.
  std::string render_stable() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace cizeta
