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


#pragma once

#include <cstdint>
#include <span>
#include <string_view>

// Inner loops of the coverage oracle and the belief recursions. Each kernel
// has a portable scalar reference and, on x86-64, an AVX2 variant chosen at
// runtime. Integer kernels are bit-identical across variants; the floating
// reductions accumulate in four interleaved lanes in every variant so that
// results are bit-identical too.

namespace blds::kernels {

struct KernelTable {
  std::string_view name;

  // acc[k] |= row[k]
  void (*or_into)(std::span<std::uint64_t> acc, std::span<const std::uint64_t> row);

  // Sum over k of min(sum_{q in masks[k]} weights[q], caps[k]).
  // masks and caps have equal length; weights covers every set bit.
  std::int64_t (*capped_weighted_sum)(std::span<const std::uint64_t> masks,
                                      std::span<const std::int64_t> weights,
                                      std::span<const std::int64_t> caps);

  // x[k] *= y[k]; returns the sum of the updated x.
  double (*mul_sum)(std::span<double> x, std::span<const double> y);

  // x[k] *= a
  void (*scale)(std::span<double> x, double a);

  // y[k] += a * x[k]
  void (*axpy)(std::span<double> y, double a, std::span<const double> x);
};

const KernelTable& scalar();

// nullptr when the binary or the CPU lacks AVX2.
const KernelTable* avx2();

// The variant used by the library: AVX2 when available, unless the
// environment variable BLDS_KERNELS is set to "scalar".
const KernelTable& active();

}  // namespace blds::kernels
