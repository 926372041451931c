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

#include <string>

#include "json.hpp"

#include "blds/bounds.hpp"
#include "blds/harness.hpp"
#include "blds/model.hpp"
#include "blds/simulate.hpp"
#include "blds/solvers.hpp"

// JSON and CSV forms of instances, solutions, networks and trajectories.
// Rationals are written as "p" or "p/q" strings; state and source indices
// are 0-based.

namespace blds {

using Json = nlohmann::json;

Json to_json(const BldsInstance& inst);
Json to_json(const GeneratedInstance& inst);
// Likelihood form when available, else the fc_sets form.
Json to_json(const ValidatedInstance& inst);

// Accepts {"m","n","prior","budgets","sources":[{"cost","signals","rows"}]}
// and the structural form with "fc_sets" in place of "sources", where each
// entry is {"cost","blocks":[[...],...]} or {"cost","fc":[[...] per state]}.
// Throws Error(kParse) on malformed input and the validation errors otherwise.
ValidatedInstance instance_from_json(const Json& j);
// Likelihood form only.
BldsInstance raw_instance_from_json(const Json& j);

Json to_json(const Solution& s);
Json to_json(const SolveTrace& t);
Json to_json(const BoundsReport& b);

// {"universe": d, "subsets": [[...], ...]}
SetCoverInstance setcover_from_json(const Json& j);
Json to_json(const SetCoverInstance& sc);

// {"weights": [[...]], "priors": [[...]], "sources": [{"signals","rows"}]}
AgentNetwork network_from_json(const Json& j);

// First line "# " + metadata JSON, then step,theta1..thetam (one block of
// columns per agent for distributed runs, prefixed a<k>_).
std::string trajectory_csv(const ValidatedInstance& inst, const BeliefTrajectory& traj);
std::string trajectory_csv(const AgentNetwork& net, const DistributedTrajectory& traj);

Json parse_json_file(const std::string& path);

}  // namespace blds
