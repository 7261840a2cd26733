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

#include "cizeta/kernels.hpp"

#include <cstring>

#include "cizeta/fp.hpp"

namespace cizeta::kernels {

uint16_t FlatSystem::max_exp() const {
  uint16_t m = 0;
  for (const auto& poly : polys)
    for (auto e : poly.exps)
      if (e > m) m = e;
  return m;
}

namespace {

// vpow[e * p + v] = v^e mod p
std::vector<uint32_t> pow_table(uint32_t p, uint16_t max_exp) {
  std::vector<uint32_t> t(static_cast<size_t>(max_exp + 1) * p);
  for (uint32_t v = 0; v < p; ++v) t[v] = 1 % p;
  for (uint16_t e = 1; e <= max_exp; ++e)
    for (uint32_t v = 0; v < p; ++v)
      t[static_cast<size_t>(e) * p + v] =
          static_cast<uint32_t>((static_cast<uint64_t>(t[(e - 1) * p + v]) * v) % p);
  return t;
}

void prefix_digits(uint64_t prefix, uint32_t p, uint32_t nvars,
                   std::vector<uint32_t>& digits) {
  for (uint32_t i = nvars; i-- > 1;) {
    digits[i - 1] = static_cast<uint32_t>(prefix % p);
    prefix /= p;
  }
}

}  // namespace

uint64_t count_zeros_scalar(const FlatSystem& sys, uint64_t pbegin, uint64_t pend) {
  const uint32_t p = sys.p;
  const uint32_t nvars = sys.nvars;
  const uint16_t maxe = sys.max_exp();
  const auto vpow = pow_table(p, maxe);
  std::vector<uint32_t> digits(nvars == 0 ? 0 : nvars - 1);
  // scratch: per poly, per term, product over the prefix variables
  std::vector<std::vector<uint64_t>> prefix_prod(sys.polys.size());
  for (size_t k = 0; k < sys.polys.size(); ++k)
    prefix_prod[k].resize(sys.polys[k].coeffs.size());

  uint64_t count = 0;
  for (uint64_t prefix = pbegin; prefix < pend; ++prefix) {
    prefix_digits(prefix, p, nvars, digits);
    for (size_t k = 0; k < sys.polys.size(); ++k) {
      const auto& poly = sys.polys[k];
      const size_t nterms = poly.coeffs.size();
      for (size_t t = 0; t < nterms; ++t) {
        uint64_t prod = poly.coeffs[t];
        const uint16_t* e = &poly.exps[t * nvars];
        for (uint32_t i = 0; i + 1 < nvars; ++i)
          prod = prod * vpow[static_cast<size_t>(e[i]) * p + digits[i]] % p;
        prefix_prod[k][t] = prod;
      }
    }
    for (uint32_t v = 0; v < p; ++v) {
      bool all_zero = true;
      for (size_t k = 0; k < sys.polys.size() && all_zero; ++k) {
        const auto& poly = sys.polys[k];
        uint64_t acc = 0;
        for (size_t t = 0; t < poly.coeffs.size(); ++t) {
          uint16_t e = poly.exps[t * nvars + nvars - 1];
          acc += prefix_prod[k][t] * vpow[static_cast<size_t>(e) * p + v];
        }
        all_zero = acc % p == 0;
      }
      if (all_zero) ++count;
    }
  }
  return count;
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool avx2_fits(const FlatSystem& sys) {
  if (sys.p > 2048) return false;  // keep term products within 22 bits
  size_t max_terms = 0;
  for (const auto& poly : sys.polys) max_terms = std::max(max_terms, poly.coeffs.size());
  // 32-bit lane accumulators: nterms * p^2 must stay below 2^32
  return max_terms < (uint64_t(1) << 32) / (uint64_t(sys.p) * sys.p);
}

uint64_t count_zeros(const FlatSystem& sys, uint64_t pbegin, uint64_t pend) {
#if defined(CIZETA_HAVE_AVX2_TU)
  if (avx2_supported() && avx2_fits(sys)) return count_zeros_avx2(sys, pbegin, pend);
#endif
  return count_zeros_scalar(sys, pbegin, pend);
}

}  // namespace cizeta::kernels
