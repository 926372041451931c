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

#include <cstddef>

#include "blds/kernels.hpp"

namespace blds::kernels {

inline constexpr std::size_t kLanes = 4;

// Fixed pairing order shared by every variant.
inline double reduce_lanes(const double lane[kLanes]) {
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

#if defined(__x86_64__)
const KernelTable& avx2_table();
#endif

}  // namespace blds::kernels
