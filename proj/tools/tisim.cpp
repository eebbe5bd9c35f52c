// tisim: offline solving, MAPF-DP executions, campaigns and exhaustive checks.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "tisim/campaign.hpp"
#include "tisim/explorer.hpp"
#include "tisim/offline.hpp"

namespace {

using namespace tisim;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kUnsolved = 2;
constexpr int kRunFailed = 3;
constexpr int kIncomplete = 4;
constexpr int kViolation = 5;

struct InstanceArgs {
  std::string map;
  std::string scen;
  std::size_t agents = 0;

  void add(CLI::App* app) {
    app->add_option("--map", map, "MovingAI .map file")->required();
    app->add_option("--scen", scen, "MovingAI .scen file")->required();
    app->add_option("-n,--agents", agents, "number of agents (first n scenario rows)")->required();
  }

  Instance load() const {
    auto graph = std::make_shared<const Graph>(load_map_file(map));
    return load_scenario_file(scen, graph, agents);
  }
};

struct SolverArgs {
  std::string solver = "cbs";
  std::string mode = "following";

  void add(CLI::App* app) {
    app->add_option("--solver", solver, "cbs | ecbs | ecbs:<w>");
    app->add_option("--mode", mode, "conflict semantics: following | swap");
  }

  SolverSpec spec() const {
    auto s = parse_solver(solver);
    if (!s) throw ParseError("unknown solver '" + solver + "'");
    auto m = parse_conflict_mode(mode);
    if (!m) throw ParseError("unknown conflict mode '" + mode + "'");
    s->mode = *m;
    return *s;
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write " + path);
  out << text;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

int cmd_solve(const InstanceArgs& in, const SolverArgs& sv, const std::string& out_path) {
  Instance instance = in.load();
  auto result = solve(instance, sv.spec());
  if (!result.plan) {
    std::cerr << "solve: " << to_string(result.status) << " after " << result.expansions
              << " expansions\n";
    return kUnsolved;
  }
  std::string text = write_plan(*result.plan, *instance.graph);
  if (out_path.empty()) std::cout << text;
  else write_file(out_path, text);
  std::cerr << "soc " << soc(*result.plan) << " makespan " << makespan(*result.plan) << "\n";
  return kOk;
}

int cmd_run(const InstanceArgs& in, const SolverArgs& sv, const std::string& algorithm, double p_bar,
            std::uint64_t seed, std::size_t bound, const std::string& plan_path,
            const std::string& trace_path, bool check, bool faithful) {
  auto algo = parse_algorithm(algorithm);
  if (!algo) throw ParseError("unknown algorithm '" + algorithm + "'");
  Instance instance = in.load();
  std::optional<Plan> plan;
  if (needs_plan(*algo)) {
    if (!plan_path.empty()) {
      plan = read_plan(read_text_file(plan_path), *instance.graph);
    } else {
      auto result = solve(instance, sv.spec());
      if (!result.plan) {
        std::cerr << "run: offline solver " << to_string(result.status) << "\n";
        return kError;
      }
      plan = std::move(result.plan);
    }
    auto check_plan = validate_plan(*plan, instance, ConflictMode::following_semantics);
    if (!check_plan.ok()) {
      std::cerr << "run: plan rejected: " << check_plan.message << "\n";
      return kError;
    }
  }
  RunSpec spec;
  spec.map_name = stem(in.map);
  spec.scen_name = stem(in.scen);
  spec.algorithm = *algo;
  spec.p_bar = p_bar;
  spec.seed = seed;
  spec.activation_bound = bound;
  spec.check_invariants = check;
  spec.greedy_faithful = faithful;
  auto outcome = execute_run(instance, spec, plan ? &*plan : nullptr);
  if (!trace_path.empty()) write_file(trace_path, write_trace(outcome.trace));
  std::cout << csv_row(spec, instance.agent_count(), outcome.metrics) << "\n";
  if (!outcome.error.empty()) {
    std::cerr << "run: " << outcome.error << "\n";
    return kError;
  }
  return outcome.metrics.success ? kOk : kRunFailed;
}

int cmd_bench(const std::string& config_path, std::size_t workers, const std::string& output) {
  auto base = std::filesystem::path(config_path).parent_path().string();
  CampaignConfig config = parse_campaign_config(read_text_file(config_path), base);
  if (workers > 0) config.workers = workers;
  if (!output.empty()) config.output = output;
  auto rows = run_campaign(config);
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      std::cerr << "bench: " << r.agents << " agents " << to_string(r.spec.algorithm) << " p_bar "
                << format_p_bar(r.spec.p_bar) << " seed " << r.spec.seed << ": " << r.error << "\n";
    }
  }
  std::string csv = campaign_csv(rows);
  if (config.output.empty()) {
    std::cout << csv;
    std::cerr << campaign_summary(rows);
  } else {
    write_file(config.output, csv);
    std::cout << campaign_summary(rows);
  }
  return kOk;
}

int cmd_verify(const InstanceArgs& in, const std::string& plan_path, const std::string& mode_text) {
  auto mode = parse_conflict_mode(mode_text);
  if (!mode) throw ParseError("unknown conflict mode '" + mode_text + "'");
  Instance instance = in.load();
  Plan plan = read_plan(read_text_file(plan_path), *instance.graph);
  auto check = validate_plan(plan, instance, *mode);
  if (check.status == PlanCheck::Status::structural) {
    std::cerr << "verify: malformed plan: " << check.message << "\n";
    return kError;
  }
  if (!check.ok()) {
    std::cout << "conflict: " << check.message << "\n";
    return kRunFailed;
  }
  std::cout << "ok soc " << soc(plan) << " makespan " << makespan(plan) << "\n";
  return kOk;
}

int cmd_explore(const InstanceArgs& in, const std::string& algorithm, std::size_t max_configs,
                bool faithful) {
  auto kind = parse_planner_kind(algorithm);
  if (!kind) throw ParseError("explore supports greedy | causal_pibt | causal_pibt_plus");
  Instance instance = in.load();
  ExploreOptions options;
  options.max_configs = max_configs;
  options.planner.greedy_faithful = faithful;
  auto report = exhaustive_explore(instance, *kind, options);
  std::cout << format_report(report);
  if (!report.complete) return kIncomplete;
  return report.clean() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-independent planning for MAPF-DP"};
  app.require_subcommand(1);

  InstanceArgs solve_in;
  SolverArgs solve_sv;
  std::string solve_out;
  auto* solve_cmd = app.add_subcommand("solve", "compute an offline plan");
  solve_in.add(solve_cmd);
  solve_sv.add(solve_cmd);
  solve_cmd->add_option("-o,--out", solve_out, "plan file (stdout when omitted)");

  InstanceArgs run_in;
  SolverArgs run_sv;
  std::string run_algo = "causal_pibt";
  double run_p = 0.0;
  std::uint64_t run_seed = 0;
  std::size_t run_bound = 10'000;
  std::string run_plan;
  std::string run_trace;
  bool run_check = false;
  bool run_faithful = false;
  auto* run_cmd = app.add_subcommand("run", "execute one MAPF-DP run and print its CSV row");
  run_in.add(run_cmd);
  run_sv.add(run_cmd);
  run_cmd->add_option("-a,--algorithm", run_algo,
                      "greedy | causal_pibt | causal_pibt_plus | fsp | mcp");
  run_cmd->add_option("-p,--p-bar", run_p, "upper bound of delay probabilities")
      ->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("-s,--seed", run_seed);
  run_cmd->add_option("-b,--bound", run_bound, "activation bound");
  run_cmd->add_option("--plan", run_plan, "plan file instead of solving");
  run_cmd->add_option("--trace", run_trace, "write the execution trace here");
  run_cmd->add_flag("--check-invariants", run_check, "check invariants after every activation");
  run_cmd->add_flag("--greedy-faithful", run_faithful,
                    "greedy keeps requesting from its goal instead of resting");

  std::string bench_config;
  std::size_t bench_workers = 0;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "run a campaign described by a config file");
  bench_cmd->add_option("config", bench_config)->required();
  bench_cmd->add_option("-w,--workers", bench_workers, "worker threads (default TISIM_WORKERS)");
  bench_cmd->add_option("-o,--out", bench_out, "CSV output, overrides the config");

  InstanceArgs verify_in;
  std::string verify_plan;
  std::string verify_mode = "following";
  auto* verify_cmd = app.add_subcommand("verify", "check a plan file against an instance");
  verify_in.add(verify_cmd);
  verify_cmd->add_option("--plan", verify_plan)->required();
  verify_cmd->add_option("--mode", verify_mode, "following | swap");

  InstanceArgs explore_in;
  std::string explore_algo = "causal_pibt";
  std::size_t explore_max = 2'000'000;
  bool explore_faithful = false;
  auto* explore_cmd = app.add_subcommand("explore", "enumerate all reachable configurations");
  explore_in.add(explore_cmd);
  explore_cmd->add_option("-a,--algorithm", explore_algo);
  explore_cmd->add_option("--max-configs", explore_max);
  explore_cmd->add_flag("--greedy-faithful", explore_faithful,
                        "greedy keeps requesting from its goal instead of resting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_in, solve_sv, solve_out);
    if (*run_cmd) {
      return cmd_run(run_in, run_sv, run_algo, run_p, run_seed, run_bound, run_plan, run_trace,
                     run_check, run_faithful);
    }
    if (*bench_cmd) return cmd_bench(bench_config, bench_workers, bench_out);
    if (*verify_cmd) return cmd_verify(verify_in, verify_plan, verify_mode);
    if (*explore_cmd) return cmd_explore(explore_in, explore_algo, explore_max, explore_faithful);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
