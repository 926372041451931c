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


#include "blds/errors.hpp"

#include <sstream>
#include <utility>

namespace blds {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroLikelihood: return "ZeroLikelihood";
    case ErrorCode::kRowNotNormalized: return "RowNotNormalized";
    case ErrorCode::kBadPrior: return "BadPrior";
    case ErrorCode::kBadBudget: return "BadBudget";
    case ErrorCode::kNonpositiveCost: return "NonpositiveCost";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kBadStructure: return "BadStructure";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kBadMatrix: return "BadMatrix";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kMissingR: return "MissingR";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message, int index)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      index_(index) {}

namespace {

std::string describe_states(const std::vector<int>& states) {
  std::ostringstream out;
  out << "no selection meets the budget of state(s)";
  for (int s : states) out << ' ' << s;
  return out.str();
}

}  // namespace

InfeasibleError::InfeasibleError(std::vector<int> violated_states)
    : Error(ErrorCode::kInfeasible, describe_states(violated_states),
            violated_states.empty() ? -1 : violated_states.front()),
      violated_(std::move(violated_states)) {}

}  // namespace blds
