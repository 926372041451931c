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


#include "kernels_internal.hpp"

#include <algorithm>

namespace blds::kernels {

namespace {

void or_into_scalar(std::span<std::uint64_t> acc, std::span<const std::uint64_t> row) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] |= row[k];
}

std::int64_t capped_weighted_sum_scalar(std::span<const std::uint64_t> masks,
                                        std::span<const std::int64_t> weights,
                                        std::span<const std::int64_t> caps) {
  std::int64_t total = 0;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    std::int64_t mass = 0;
    for (std::size_t q = 0; q < weights.size(); ++q) {
      if ((masks[k] >> q) & 1U) mass += weights[q];
    }
    total += std::min(mass, caps[k]);
  }
  return total;
}

double mul_sum_scalar(std::span<double> x, std::span<const double> y) {
  double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = 0;
  for (; k + kLanes <= x.size(); k += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      x[k + l] *= y[k + l];
      lane[l] += x[k + l];
    }
  }
  double total = reduce_lanes(lane);
  for (; k < x.size(); ++k) {
    x[k] *= y[k];
    total += x[k];
  }
  return total;
}

void scale_scalar(std::span<double> x, double a) {
  for (double& v : x) v *= a;
}

void axpy_scalar(std::span<double> y, double a, std::span<const double> x) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar",          or_into_scalar, capped_weighted_sum_scalar,
                                 mul_sum_scalar,    scale_scalar,   axpy_scalar};
  return table;
}

}  // namespace blds::kernels
