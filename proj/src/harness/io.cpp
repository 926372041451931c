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


#include "blds/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "blds/errors.hpp"

namespace blds {

namespace {

Json rational_json(const Rational& r) { return to_string(r); }

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& r : v) out.push_back(to_string(r));
  return out;
}

Json set_json(std::uint64_t bits) {
  Json out = Json::array();
  for (int k = 0; k < 64; ++k) {
    if ((bits >> k) & 1U) out.push_back(k);
  }
  return out;
}

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw Error(ErrorCode::kParse, "expected a rational string, got " + j.dump());
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "expected an array, got " + j.dump());
  std::vector<Rational> out;
  for (const Json& e : j) out.push_back(rational_from(e));
  return out;
}

template <class Set>
Set set_from(const Json& j, int bound) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "expected an index array, got " + j.dump());
  Set out;
  for (const Json& e : j) {
    if (!e.is_number_integer()) throw Error(ErrorCode::kParse, "index must be an integer");
    const int k = e.get<int>();
    if (k < 0 || k >= bound) throw Error(ErrorCode::kBadStructure, "index " + std::to_string(k) + " out of range");
    out.insert(k);
  }
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorCode::kParse, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

StateSpace states_from(const Json& j, int m) {
  if (!j.contains("states")) return StateSpace::numbered(m);
  StateSpace s;
  for (const Json& l : j.at("states")) s.labels.push_back(l.get<std::string>());
  return s;
}

Json header_json(const StateSpace& states, const std::vector<Rational>& prior,
                 const std::vector<Rational>& budgets, int n) {
  Json j;
  j["m"] = states.size();
  j["n"] = n;
  j["states"] = states.labels;
  j["prior"] = rationals_json(prior);
  j["budgets"] = rationals_json(budgets);
  return j;
}

Json source_json(const Source& s) {
  Json j;
  j["cost"] = rational_json(s.cost);
  j["signals"] = s.signal_count;
  Json rows = Json::array();
  for (const auto& row : s.likelihood) rows.push_back(rationals_json(row));
  j["rows"] = rows;
  return j;
}

Source source_from(const Json& j) {
  Source s;
  if (j.contains("cost")) s.cost = rational_from(j.at("cost"));
  s.signal_count = field(j, "signals").get<int>();
  for (const Json& row : field(j, "rows")) s.likelihood.push_back(rationals_from(row));
  return s;
}

Json fc_json(const std::vector<StructuralSource>& sources) {
  Json out = Json::array();
  for (const StructuralSource& s : sources) {
    Json fc = Json::array();
    for (StateSet d : s.distinguishable) fc.push_back(set_json(d.bits()));
    out.push_back(Json{{"cost", rational_json(s.cost)}, {"fc", fc}});
  }
  return out;
}

template <class F>
auto wrap_parse(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Json to_json(const BldsInstance& inst) {
  Json j = header_json(inst.states, inst.prior, inst.budgets, static_cast<int>(inst.sources.size()));
  j["sources"] = Json::array();
  for (const Source& s : inst.sources) j["sources"].push_back(source_json(s));
  return j;
}

Json to_json(const GeneratedInstance& inst) {
  if (inst.likelihoods) return to_json(*inst.likelihoods);
  Json j = header_json(inst.states, inst.prior, inst.budgets, static_cast<int>(inst.structure.size()));
  j["fc_sets"] = fc_json(inst.structure);
  return j;
}

Json to_json(const ValidatedInstance& inst) {
  if (inst.has_likelihoods()) return to_json(inst.raw());
  std::vector<StructuralSource> structure;
  for (int i = 0; i < inst.num_sources(); ++i) {
    StructuralSource s{inst.cost(i), {}};
    for (int p = 0; p < inst.num_states(); ++p) s.distinguishable.push_back(inst.map().distinguishable(i, p));
    structure.push_back(std::move(s));
  }
  Json j = header_json(inst.states(), inst.prior(), inst.budgets(), inst.num_sources());
  j["fc_sets"] = fc_json(structure);
  return j;
}

BldsInstance raw_instance_from_json(const Json& j) {
  return wrap_parse([&] {
    const int m = field(j, "m").get<int>();
    BldsInstance inst;
    inst.states = states_from(j, m);
    inst.prior = rationals_from(field(j, "prior"));
    inst.budgets = rationals_from(field(j, "budgets"));
    for (const Json& s : field(j, "sources")) inst.sources.push_back(source_from(s));
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(inst.sources.size())) {
      throw Error(ErrorCode::kDimensionMismatch, "\"n\" disagrees with the source list");
    }
    if (inst.states.size() != m) throw Error(ErrorCode::kDimensionMismatch, "\"m\" disagrees with the state labels");
    return inst;
  });
}

ValidatedInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "instance must be a JSON object");
  if (j.contains("sources")) return validate_instance(raw_instance_from_json(j));
  return wrap_parse([&] {
    const int m = field(j, "m").get<int>();
    if (m < 1 || m > kMaxIndex) throw Error(ErrorCode::kTooLarge, "m must lie in [1, 64]");
    std::vector<StructuralSource> sources;
    for (const Json& s : field(j, "fc_sets")) {
      StructuralSource src;
      if (s.contains("cost")) src.cost = rational_from(s.at("cost"));
      if (s.contains("blocks")) {
        src.distinguishable.assign(m, StateSet());
        StateSet seen;
        for (const Json& b : s.at("blocks")) {
          const StateSet block = set_from<StateSet>(b, m);
          if (!(block & seen).empty()) throw Error(ErrorCode::kBadStructure, "blocks overlap");
          seen |= block;
          for (int q : block.members()) src.distinguishable[q] = block.complement(m);
        }
        if (seen != StateSet::first(m)) throw Error(ErrorCode::kBadStructure, "blocks do not cover the states");
      } else {
        for (const Json& d : field(s, "fc")) src.distinguishable.push_back(set_from<StateSet>(d, m));
      }
      sources.push_back(std::move(src));
    }
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(sources.size())) {
      throw Error(ErrorCode::kDimensionMismatch, "\"n\" disagrees with the source list");
    }
    return validate_structure(states_from(j, m), rationals_from(field(j, "prior")),
                              rationals_from(field(j, "budgets")), std::move(sources));
  });
}

Json to_json(const Solution& s) {
  return Json{{"selected", set_json(s.selected.bits())},
              {"cost", rational_json(s.cost)},
              {"achieved_z", rational_json(s.achieved_z)},
              {"feasible", s.feasible}};
}

Json to_json(const SolveTrace& t) {
  Json picks = Json::array();
  for (const Pick& p : t.picks) {
    picks.push_back(Json{{"iteration", p.iteration},
                         {"source", p.source},
                         {"gain", rational_json(p.gain)},
                         {"z_after", rational_json(p.z_after)}});
  }
  Json order = Json::array();
  for (const Pick& p : t.picks) order.push_back(p.source);
  return Json{{"order", order},
              {"picks", picks},
              {"oracle_calls", t.oracle_calls},
              {"threshold_levels", t.threshold_levels}};
}

Json to_json(const BoundsReport& b) {
  const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"bound_a", opt(b.bound_a)},     {"bound_b", opt(b.bound_b)}, {"bound_c", opt(b.bound_c)},
              {"bound_d", opt(b.bound_d)},     {"bound_d_log", opt(b.bound_d_log)},
              {"fast_a", opt(b.fast_a)},       {"fast_b", opt(b.fast_b)},   {"m_value", b.m_value},
              {"scale", b.scale},              {"cost_ratio", b.cost_ratio}};
}

SetCoverInstance setcover_from_json(const Json& j) {
  return wrap_parse([&] {
    SetCoverInstance sc;
    sc.universe_size = field(j, "universe").get<int>();
    if (sc.universe_size < 0 || sc.universe_size > kMaxIndex) {
      throw Error(ErrorCode::kTooLarge, "universe size must lie in [0, 64]");
    }
    for (const Json& s : field(j, "subsets")) sc.subsets.push_back(set_from<ElementSet>(s, sc.universe_size));
    return sc;
  });
}

Json to_json(const SetCoverInstance& sc) {
  Json subsets = Json::array();
  for (ElementSet s : sc.subsets) subsets.push_back(set_json(s.bits()));
  return Json{{"universe", sc.universe_size}, {"subsets", subsets}};
}

AgentNetwork network_from_json(const Json& j) {
  return wrap_parse([&] {
    AgentNetwork net;
    for (const Json& row : field(j, "weights")) net.weights.push_back(rationals_from(row));
    for (const Json& p : field(j, "priors")) net.priors.push_back(rationals_from(p));
    for (const Json& s : field(j, "sources")) net.sources.push_back(source_from(s));
    return net;
  });
}

std::string trajectory_csv(const ValidatedInstance& inst, const BeliefTrajectory& traj) {
  std::ostringstream os;
  const Json meta{{"seed", traj.seed},
                  {"selected", set_json(traj.selected.bits())},
                  {"true_state", traj.true_state}};
  os << "# " << meta.dump() << "\nstep";
  for (const std::string& l : inst.states().labels) os << ',' << l;
  os << '\n';
  for (std::size_t k = 0; k < traj.beliefs.size(); ++k) {
    os << k;
    for (double v : traj.beliefs[k]) os << ',' << num(v);
    os << '\n';
  }
  return os.str();
}

std::string trajectory_csv(const AgentNetwork& net, const DistributedTrajectory& traj) {
  std::ostringstream os;
  const Json meta{{"seed", traj.seed},
                  {"selected", set_json(traj.selected.bits())},
                  {"true_state", traj.true_state},
                  {"agents", net.num_agents()}};
  os << "# " << meta.dump() << "\nstep";
  for (int a = 0; a < net.num_agents(); ++a) {
    for (int q = 0; q < net.num_states(); ++q) os << ",a" << a << "_theta" << q + 1;
  }
  os << '\n';
  for (std::size_t k = 0; k < traj.beliefs.size(); ++k) {
    os << k;
    for (const Belief& b : traj.beliefs[k]) {
      for (double v : b) os << ',' << num(v);
    }
    os << '\n';
  }
  return os.str();
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

}  // namespace blds
