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

// AVX2 variant of the prime-field zero-counting kernel.  This translation
// unit is compiled with -mavx2 and only reached through the runtime
// dispatch in kernels.cpp (CPU support + avx2_fits checked there).

#include "cizeta/kernels.hpp"

#if defined(CIZETA_HAVE_AVX2_TU)

#include <immintrin.h>

#include <algorithm>
#include <vector>

namespace cizeta::kernels {

namespace {

void prefix_digits(uint64_t prefix, uint32_t p, uint32_t nvars,
                   std::vector<uint32_t>& digits) {
  for (uint32_t i = nvars; i-- > 1;) {
    digits[i - 1] = static_cast<uint32_t>(prefix % p);
    prefix /= p;
  }
}

}  // namespace

uint64_t count_zeros_avx2(const FlatSystem& sys, uint64_t pbegin, uint64_t pend) {
  const uint32_t p = sys.p;
  const uint32_t nvars = sys.nvars;
  const uint16_t maxe = sys.max_exp();
  // vectors of v^e over the last variable, padded to a multiple of 8 with
  // sentinel value-lanes that never count (their "value" p is out of range)
  const uint32_t padded = (p + 7u) & ~7u;
  std::vector<uint32_t> vpow_vec(static_cast<size_t>(maxe + 1) * padded, 0);
  std::vector<uint32_t> vpow(static_cast<size_t>(maxe + 1) * p);
  for (uint32_t v = 0; v < p; ++v) vpow[v] = 1 % p;
  for (uint16_t e = 1; e <= maxe; ++e)
    for (uint32_t v = 0; v < p; ++v)
      vpow[static_cast<size_t>(e) * p + v] =
          static_cast<uint32_t>((static_cast<uint64_t>(vpow[(e - 1) * p + v]) * v) % p);
  for (uint16_t e = 0; e <= maxe; ++e)
    for (uint32_t v = 0; v < p; ++v)
      vpow_vec[static_cast<size_t>(e) * padded + v] = vpow[static_cast<size_t>(e) * p + v];

  std::vector<uint32_t> digits(nvars == 0 ? 0 : nvars - 1);
  std::vector<std::vector<uint32_t>> prefix_prod(sys.polys.size());
  for (size_t k = 0; k < sys.polys.size(); ++k)
    prefix_prod[k].resize(sys.polys[k].coeffs.size());
  std::vector<uint32_t> lane_acc(8);

  uint64_t count = 0;
  for (uint64_t prefix = pbegin; prefix < pend; ++prefix) {
    prefix_digits(prefix, p, nvars, digits);
    for (size_t k = 0; k < sys.polys.size(); ++k) {
      const auto& poly = sys.polys[k];
      for (size_t t = 0; t < poly.coeffs.size(); ++t) {
        uint64_t prod = poly.coeffs[t];
        const uint16_t* e = &poly.exps[t * nvars];
        for (uint32_t i = 0; i + 1 < nvars; ++i)
          prod = prod * vpow[static_cast<size_t>(e[i]) * p + digits[i]] % p;
        prefix_prod[k][t] = static_cast<uint32_t>(prod);
      }
    }
    for (uint32_t vb = 0; vb < padded; vb += 8) {
      // lanes = values vb..vb+7 of the last variable (pad lanes ignored)
      uint8_t zero_mask = 0xff;
      for (size_t k = 0; k < sys.polys.size() && zero_mask; ++k) {
        const auto& poly = sys.polys[k];
        __m256i acc = _mm256_setzero_si256();
        for (size_t t = 0; t < poly.coeffs.size(); ++t) {
          uint16_t e = poly.exps[t * nvars + nvars - 1];
          __m256i pw = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(
              &vpow_vec[static_cast<size_t>(e) * padded + vb]));
          __m256i cp = _mm256_set1_epi32(static_cast<int>(prefix_prod[k][t]));
          acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(pw, cp));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(lane_acc.data()), acc);
        for (unsigned lane = 0; lane < 8; ++lane)
          if (lane_acc[lane] % p != 0) zero_mask &= static_cast<uint8_t>(~(1u << lane));
      }
      if (!zero_mask) continue;
      const uint32_t live = std::min(8u, p - vb);
      for (unsigned lane = 0; lane < live; ++lane)
        if (zero_mask & (1u << lane)) ++count;
    }
  }
  return count;
}

}  // namespace cizeta::kernels

#endif  // CIZETA_HAVE_AVX2_TU
