// Copyright 2026 The BLDS Authors.
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


// Compiled with -mavx2 -ffp-contract=off; only reached after a CPUID check.
#include "kernels_internal.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

#include <algorithm>

namespace blds::kernels {

namespace {

void or_into_avx2(std::span<std::uint64_t> acc, std::span<const std::uint64_t> row) {
  std::size_t k = 0;
  for (; k + 4 <= acc.size(); k += 4) {
    auto* dst = reinterpret_cast<__m256i*>(acc.data() + k);
    const __m256i a = _mm256_loadu_si256(dst);
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row.data() + k));
    _mm256_storeu_si256(dst, _mm256_or_si256(a, b));
  }
  for (; k < acc.size(); ++k) acc[k] |= row[k];
}

inline std::int64_t hsum_epi64(__m256i v) {
  alignas(32) std::int64_t out[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(out), v);
  return (out[0] + out[1]) + (out[2] + out[3]);
}

// Four masks per vector; the weight loop walks bit positions and adds the
// broadcast weight in the lanes whose bit is set.
std::int64_t capped_weighted_sum_avx2(std::span<const std::uint64_t> masks,
                                      std::span<const std::int64_t> weights,
                                      std::span<const std::int64_t> caps) {
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  __m256i total = zero;
  std::size_t k = 0;
  for (; k + 4 <= masks.size(); k += 4) {
    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks.data() + k));
    __m256i mass = zero;
    for (std::size_t q = 0; q < weights.size(); ++q) {
      const __m256i bit = _mm256_and_si256(_mm256_srlv_epi64(m, _mm256_set1_epi64x(static_cast<long long>(q))), one);
      const __m256i select = _mm256_sub_epi64(zero, bit);
      mass = _mm256_add_epi64(mass, _mm256_and_si256(select, _mm256_set1_epi64x(weights[q])));
    }
    const __m256i cap = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(caps.data() + k));
    const __m256i over = _mm256_cmpgt_epi64(mass, cap);
    total = _mm256_add_epi64(total, _mm256_blendv_epi8(mass, cap, over));
  }
  std::int64_t sum = hsum_epi64(total);
  for (; k < masks.size(); ++k) {
    std::int64_t mass = 0;
    for (std::size_t q = 0; q < weights.size(); ++q) {
      if ((masks[k] >> q) & 1U) mass += weights[q];
    }
    sum += std::min(mass, caps[k]);
  }
  return sum;
}

double mul_sum_avx2(std::span<double> x, std::span<const double> y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + kLanes <= x.size(); k += kLanes) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(x.data() + k), _mm256_loadu_pd(y.data() + k));
    _mm256_storeu_pd(x.data() + k, prod);
    acc = _mm256_add_pd(acc, prod);
  }
  alignas(32) double lane[kLanes];
  _mm256_store_pd(lane, acc);
  double total = reduce_lanes(lane);
  for (; k < x.size(); ++k) {
    x[k] *= y[k];
    total += x[k];
  }
  return total;
}

void scale_avx2(std::span<double> x, double a) {
  const __m256d factor = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= x.size(); k += 4) {
    _mm256_storeu_pd(x.data() + k, _mm256_mul_pd(_mm256_loadu_pd(x.data() + k), factor));
  }
  for (; k < x.size(); ++k) x[k] *= a;
}

void axpy_avx2(std::span<double> y, double a, std::span<const double> x) {
  const __m256d factor = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= y.size(); k += 4) {
    const __m256d prod = _mm256_mul_pd(factor, _mm256_loadu_pd(x.data() + k));
    _mm256_storeu_pd(y.data() + k, _mm256_add_pd(_mm256_loadu_pd(y.data() + k), prod));
  }
  for (; k < y.size(); ++k) y[k] += a * x[k];
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2",       or_into_avx2, capped_weighted_sum_avx2,
                                 mul_sum_avx2, scale_avx2,   axpy_avx2};
  return table;
}

}  // namespace blds::kernels

#endif  // __x86_64__
