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
#include <vector>

namespace cizeta::kernels {

// A polynomial system over the prime field F_p flattened for tight
// evaluation loops.  Assignments are indexed by integers in [0, p^nvars):
// variable 0 is the most significant base-p digit, the last variable the
// least significant, so a contiguous index range fixes a prefix and sweeps
// the last variable fastest.
struct FlatPoly {
  std::vector<uint32_t> coeffs;  // reduced mod p, nonzero
  std::vector<uint16_t> exps;    // nterms * nvars, row-major
};

struct FlatSystem {
  uint32_t p = 0;
  uint32_t nvars = 0;
  std::vector<FlatPoly> polys;
  uint16_t max_exp() const;
};

// Number of assignments in the prefix range [pbegin, pend) x F_p (prefixes
// run over the first nvars-1 variables; the last variable is swept
// internally) at which every polynomial vanishes.  For nvars == 1 the only
// valid prefix range is [0, 1).
uint64_t count_zeros_scalar(const FlatSystem& sys, uint64_t pbegin, uint64_t pend);

bool avx2_supported();

#if defined(CIZETA_HAVE_AVX2_TU)
uint64_t count_zeros_avx2(const FlatSystem& sys, uint64_t pbegin, uint64_t pend);
#endif

// Runtime dispatch: AVX2 when compiled in, supported by the CPU, and the
// system is within the vector kernel's overflow limits; otherwise scalar.
uint64_t count_zeros(const FlatSystem& sys, uint64_t pbegin, uint64_t pend);

// True when the AVX2 kernel accepts this system (accumulator-width limits).
bool avx2_fits(const FlatSystem& sys);

}  // namespace cizeta::kernels
