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
#include <string>
#include <vector>

#include "blds/model.hpp"
#include "blds/rational.hpp"

namespace blds {

inline constexpr int kMaxVerifySources = 10;

// Exhaustive property checks over every subset of the sources. Counts are
// violations; zero everywhere means the instance passes.
struct PropertyReport {
  int num_sources = 0;
  std::int64_t subsets = 0;
  std::int64_t oracle_mismatches = 0;         // fast oracle vs exact rationals
  std::int64_t monotonicity = 0;              // A <= B implies g(A) <= g(B)
  std::int64_t diminishing_returns = 0;       // marginal form of submodularity
  std::int64_t lattice = 0;                   // g(A) + g(B) >= g(A|B) + g(A&B)
  std::int64_t feasibility_disagreements = 0; // z(I) = z([n]) vs direct budget check
  std::int64_t solver_violations = 0;         // solver contracts and bound soundness
  std::vector<std::string> notes;

  bool ok() const;
};

// Monotonicity and both submodularity forms are checked for z and for every
// truncated f of an active state. Throws Error(kTooLarge) above 10 sources.
PropertyReport verify_instance(const ValidatedInstance& inst, const Rational& epsilon = Rational(1, 10));

}  // namespace blds
