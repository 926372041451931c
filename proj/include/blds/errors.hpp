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

#include <stdexcept>
#include <string>
#include <vector>

namespace blds {

enum class ErrorCode {
  kZeroLikelihood,
  kRowNotNormalized,
  kBadPrior,
  kBadBudget,
  kNonpositiveCost,
  kDimensionMismatch,
  kBadStructure,
  kTooLarge,
  kInfeasible,
  kNotConverged,
  kBadMatrix,
  kBadConfig,
  kMissingR,
  kParse,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this type. `index()` names the
// offending source, state or agent when there is one, and is -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, int index = -1);

  ErrorCode code() const { return code_; }
  int index() const { return index_; }

 private:
  ErrorCode code_;
  int index_;
};

// Raised when some active state cannot meet its budget even with every
// source selected.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(std::vector<int> violated_states);

  const std::vector<int>& violated_states() const { return violated_; }

 private:
  std::vector<int> violated_;
};

}  // namespace blds
