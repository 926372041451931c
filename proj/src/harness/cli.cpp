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


#include "blds/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>

#include "CLI11.hpp"

#include "blds/bounds.hpp"
#include "blds/errors.hpp"
#include "blds/harness.hpp"
#include "blds/io.hpp"
#include "blds/objective.hpp"
#include "blds/simulate.hpp"
#include "blds/solvers.hpp"
#include "blds/verify.hpp"

namespace blds {

namespace {

// Thrown for flag values that parse as strings but not as their type.
struct UsageError {
  std::string message;
};

Rational parse_flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw UsageError{flag + ": " + e.what()};
  }
}

GenMode parse_mode(const std::string& text) { return text == "realizable" ? GenMode::kRealizable : GenMode::kRaw; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write " + path);
  out << text;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

struct GenFlags {
  GenConfig cfg;
  std::string mode = "raw";
  std::string include_prob = "1/2";

  void attach(CLI::App* app) {
    app->add_option("--n", cfg.n, "number of sources");
    app->add_option("--m", cfg.m, "number of states");
    app->add_option("--cost-max", cfg.cost_max, "costs are uniform on 1..cost-max");
    app->add_option("--count", cfg.count, "instances per R");
    app->add_option("--seed", cfg.seed, "base seed (default BLDS_SEED or 42)");
    app->add_option("--mode", mode, "raw or realizable")->check(CLI::IsMember({"raw", "realizable"}));
    app->add_option("--include-prob", include_prob, "raw-mode inclusion probability");
    app->add_option("--max-blocks", cfg.max_blocks, "realizable-mode block labels (0 = m)");
  }
  GenConfig finish() {
    cfg.mode = parse_mode(mode);
    cfg.include_prob = parse_flag_rational("--include-prob", include_prob);
    return cfg;
  }
};

SourceSet parse_selection(const std::vector<int>& members, int bound) {
  SourceSet s;
  for (int i : members) {
    if (i < 0 || i >= bound) throw UsageError{"--select: index " + std::to_string(i) + " out of range"};
    s.insert(i);
  }
  return s;
}

int run(CLI::App& app, std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  app.require_subcommand(1);
  GenFlags gen_flags;
  gen_flags.cfg.seed = seed_from_env();

  // gen
  CLI::App* gen = app.add_subcommand("gen", "generate random instances as JSON lines");
  gen_flags.attach(gen);
  int gen_r = gen_flags.cfg.r;
  std::optional<int> gen_index;
  std::string gen_out;
  gen->add_option("--R", gen_r, "budget numerator, budgets are R/m");
  gen->add_option("--index", gen_index, "emit only this instance");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // solve
  CLI::App* solve = app.add_subcommand("solve", "solve an instance and report bounds");
  std::string instance_path;
  std::string algo = "greedy";
  std::string epsilon_text = "1/10";
  solve->add_option("--instance", instance_path, "instance JSON")->required();
  solve->add_option("--algo", algo, "greedy, fast or exact")->check(CLI::IsMember({"greedy", "fast", "exact"}));
  solve->add_option("--epsilon", epsilon_text, "fast-greedy epsilon as a rational");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "run the random-instance campaign");
  GenFlags bench_flags;
  bench_flags.cfg.seed = seed_from_env();
  bench_flags.attach(bench);
  BenchConfig bench_cfg;
  std::string bench_eps = "1/10";
  std::string out_dir = "bench_out";
  int bins = 20;
  std::vector<int> hist_r{1, 5, 10};
  bench->add_option("--R", bench_cfg.r_values, "budget numerators");
  bench->add_option("--epsilon", bench_eps, "fast-greedy epsilon as a rational");
  bench->add_option("--threads", bench_cfg.threads, "worker threads (0 = all cores)");
  bench->add_option("--out-dir", out_dir, "directory for CSV and SVG outputs");
  bench->add_option("--bins", bins, "histogram bins");
  bench->add_option("--hist-R", hist_r, "R values to plot histograms for");

  // simulate
  CLI::App* sim = app.add_subcommand("simulate", "simulate Bayesian or distributed learning");
  std::string sim_instance;
  std::string network_path;
  std::vector<int> select;
  int truth = 0;
  int steps = 2000;
  std::uint64_t sim_seed = seed_from_env();
  std::string sim_out;
  bool summary = false;
  auto* sim_inst_opt = sim->add_option("--instance", sim_instance, "instance JSON with likelihoods");
  auto* sim_net_opt = sim->add_option("--network", network_path, "network JSON for the distributed rule");
  sim_inst_opt->excludes(sim_net_opt);
  sim->add_option("--select", select, "selected sources or agents (default: greedy / all agents)");
  sim->add_option("--truth", truth, "index of the true state");
  sim->add_option("--steps", steps, "number of steps");
  sim->add_option("--seed", sim_seed, "sampling seed");
  sim->add_option("--out", sim_out, "trajectory CSV file (default stdout)");
  sim->add_flag("--summary", summary, "print final and limit beliefs as JSON instead of the trajectory");

  // reduce
  CLI::App* reduce = app.add_subcommand("reduce", "build the BLDS instance of a set cover");
  std::string setcover_path;
  reduce->add_option("--setcover", setcover_path, "set cover JSON")->required();

  // verify
  CLI::App* verify = app.add_subcommand("verify", "exhaustive property checks on an instance");
  std::string verify_path;
  std::string verify_eps = "1/10";
  verify->add_option("--instance", verify_path, "instance JSON")->required();
  verify->add_option("--epsilon", verify_eps, "fast-greedy epsilon as a rational");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) {
      GenConfig cfg = gen_flags.finish();
      cfg.r = gen_r;
      validate_gen_config(cfg);
      std::string text;
      const int first = gen_index.value_or(0);
      const int last = gen_index ? first + 1 : cfg.count;
      for (int k = first; k < last; ++k) text += to_json(gen_instance(cfg, k)).dump() + "\n";
      emit(out, gen_out, text);
    } else if (*solve) {
      const Rational eps = parse_flag_rational("--epsilon", epsilon_text);
      const ValidatedInstance inst = instance_from_json(parse_json_file(instance_path));
      check_solvable(inst);
      const CoverageFunction z(inst);
      Json j{{"algo", algo}};
      if (algo == "exact") {
        j["solution"] = to_json(exact_solve(z));
      } else if (algo == "greedy") {
        const SolveResult r = greedy_solve(z);
        j["solution"] = to_json(r.solution);
        j["trace"] = to_json(r.trace);
        j["bounds"] = to_json(greedy_bounds(r.trace, z));
      } else {
        const SolveResult r = fast_greedy_solve(z, FastGreedyConfig{eps});
        j["epsilon"] = to_string(eps);
        j["solution"] = to_json(r.solution);
        j["trace"] = to_json(r.trace);
        j["bounds"] = to_json(fast_bounds(r.trace, z, eps));
      }
      out << j.dump(2) << '\n';
    } else if (*bench) {
      bench_cfg.gen = bench_flags.finish();
      bench_cfg.epsilon = parse_flag_rational("--epsilon", bench_eps);
      const BenchReport report = run_benchmark(bench_cfg);
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path dir(out_dir);
      write_text(dir / "report.csv", report_csv(report));
      write_text(dir / "aggregate.csv", aggregate_csv(report));
      const BoundCurve curve = emit_bound_curve(report);
      write_text(dir / "bound_curve.csv", curve.csv);
      write_text(dir / "bound_curve.svg", curve.svg);
      for (int r : hist_r) {
        if (report.rows_for(r).empty()) continue;
        for (const auto& [kind, name] : {std::pair{RatioKind::kGreedy, "greedy"}, std::pair{RatioKind::kFast, "fast"}}) {
          const Histogram h = emit_histogram(report, r, kind, bins);
          const std::string stem = std::string("hist_") + name + "_R" + std::to_string(r);
          write_text(dir / (stem + ".csv"), h.csv);
          write_text(dir / (stem + ".svg"), h.svg);
        }
      }
      out << aggregate_csv(report);
    } else if (*sim) {
      if (sim_instance.empty() == network_path.empty()) throw UsageError{"simulate needs --instance or --network"};
      if (steps < 0) throw UsageError{"--steps: must be nonnegative"};
      if (!network_path.empty()) {
        const AgentNetwork net = network_from_json(parse_json_file(network_path));
        validate_network(net);
        if (truth < 0 || truth >= net.num_states()) throw UsageError{"--truth: state index out of range"};
        const SourceSet sel = select.empty() ? SourceSet::first(net.num_agents()) : parse_selection(select, net.num_agents());
        const DistributedTrajectory traj = run_nonbayes(net, sel, truth, steps, sim_seed);
        if (summary) {
          out << Json{{"final", traj.beliefs.back()},
                      {"limit", nonbayes_limit(net, sel, truth)},
                      {"stationary", stationary_distribution(net.weights).pi}}
                     .dump(2)
              << '\n';
        } else {
          emit(out, sim_out, trajectory_csv(net, traj));
        }
      } else {
        const ValidatedInstance inst = instance_from_json(parse_json_file(sim_instance));
        if (truth < 0 || truth >= inst.num_states()) throw UsageError{"--truth: state index out of range"};
        const SourceSet sel = select.empty() ? greedy_solve(inst).solution.selected : parse_selection(select, inst.num_sources());
        const BeliefTrajectory traj = run_bayes(inst, sel, truth, steps, sim_seed);
        if (summary) {
          std::vector<std::string> limit;
          for (const Rational& v : limit_belief(inst, sel, truth)) limit.push_back(to_string(v));
          out << Json{{"selected", to_json(Solution{sel, inst.cost_of(sel), 0, false})["selected"]},
                      {"final", traj.beliefs.back()},
                      {"limit", limit}}
                     .dump(2)
              << '\n';
        } else {
          emit(out, sim_out, trajectory_csv(inst, traj));
        }
      }
    } else if (*reduce) {
      out << to_json(reduce_set_cover(setcover_from_json(parse_json_file(setcover_path)))).dump(2) << '\n';
    } else if (*verify) {
      const Rational eps = parse_flag_rational("--epsilon", verify_eps);
      const PropertyReport r = verify_instance(instance_from_json(parse_json_file(verify_path)), eps);
      out << Json{{"ok", r.ok()},
                  {"sources", r.num_sources},
                  {"subsets", r.subsets},
                  {"oracle_mismatches", r.oracle_mismatches},
                  {"monotonicity", r.monotonicity},
                  {"diminishing_returns", r.diminishing_returns},
                  {"lattice", r.lattice},
                  {"feasibility_disagreements", r.feasibility_disagreements},
                  {"solver_violations", r.solver_violations},
                  {"notes", r.notes}}
                 .dump(2)
          << '\n';
      return r.ok() ? kExitOk : kExitFailure;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << '\n';
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    err << Json{{"error", error_code_name(e.code())}, {"message", e.what()}, {"violated_states", e.violated_states()}}.dump()
        << '\n';
    return kExitFailure;
  } catch (const Error& e) {
    err << Json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data-source selection for Bayesian learning", "blds"};
  return run(app, args, out, err);
}

int cli_dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace blds
