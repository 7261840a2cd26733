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
#include <stdexcept>
#include <string>

namespace cizeta {

// Error hierarchy shared by all modules.  Each condition named by a module
// contract gets its own type so tests can catch it precisely.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CompositeP : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct NonIntegralRelation : Error { using Error::Error; };
struct NotSmoothSuspected : Error { using Error::Error; };
struct ExceptionalClassNeeded : Error { using Error::Error; };
struct SolveFailed : Error { using Error::Error; };
struct NonIntegerCoefficient : Error { using Error::Error; };
struct BoundViolation : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct MismatchAtDegree : Error { using Error::Error; };
struct NoRootFound : Error { using Error::Error; };
struct PrecisionExhausted : Error { using Error::Error; };
struct TruncationUncertified : Error { using Error::Error; };
struct DivisionNotExact : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct PrecisionInsufficient : Error { using Error::Error; };
struct InputError : Error { using Error::Error; };

// Arithmetic mod a word-sized prime p.  All values are kept reduced in
// [0, p).  p <= 2^20 throughout, so products fit comfortably in 64 bits.
inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % p);
}

inline uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline uint64_t inv_mod(uint64_t a, uint64_t p) {
  if (a % p == 0) throw Error("inv_mod: zero has no inverse mod " + std::to_string(p));
  return pow_mod(a, p - 2, p);  // p prime
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace cizeta
