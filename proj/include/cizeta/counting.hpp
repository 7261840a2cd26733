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
#include <string>
#include <vector>

#include "cizeta/biform.hpp"

namespace cizeta {

constexpr uint64_t kDefaultBudget = 1'000'000'000;

// Predicted evaluation cost q^{m(n+1)}; throws BudgetExceeded when over.
uint64_t enumeration_cost(const VarietySpec& spec, unsigned m, uint64_t budget);

// N'_m: number of (x_0..x_n) in F_{q^m}^{n+1} with f_1 = ... = f_r = 0.
// Deterministic and bit-identical for any worker count.
uint64_t count_affine(const VarietySpec& spec, unsigned m,
                      uint64_t budget = kDefaultBudget, unsigned workers = 1);

// N_m = (N'_m - 1)/(q^m - 1); throws NonIntegralRelation when the division
// is not exact (that would be an implementation bug).
uint64_t count_projective(const VarietySpec& spec, unsigned m,
                          uint64_t budget = kDefaultBudget, unsigned workers = 1);

// Cross-check mode: direct orbit-free enumeration of projective points
// (leading nonzero coordinate normalized to 1).
uint64_t count_projective_direct(const VarietySpec& spec, unsigned m,
                                 uint64_t budget = kDefaultBudget,
                                 unsigned workers = 1);

struct CountLedger {
  std::vector<uint64_t> projective;  // N_m, m = 1..M
  std::vector<uint64_t> affine;      // N'_m
  std::vector<double> seconds;
  unsigned workers = 1;
};

CountLedger count_up_to(const VarietySpec& spec, unsigned m_max,
                        uint64_t budget = kDefaultBudget, unsigned workers = 1);

// Finite-depth smoothness audit: scans every point of X over F_{q^k} for
// k = 1..k_max and checks that the r x (n+1) Jacobi matrix has rank r.
// Also spot-checks that proper subsets of the equations keep full Jacobi
// rank at sampled common zeros (complete-intersection heuristic).
struct AuditVerdict {
  bool smooth = false;
  unsigned depth = 0;          // SmoothUpToDepth when smooth
  std::string witness;         // human-readable point when singular
  unsigned witness_ext = 0;    // extension degree k of the witness field
  std::string detail;
};

AuditVerdict smoothness_audit(const VarietySpec& spec, unsigned k_max,
                              uint64_t budget = kDefaultBudget,
                              uint64_t sample_seed = 1);

}  // namespace cizeta
