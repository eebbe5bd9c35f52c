#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tisim/offline.hpp"
#include "tisim/policies.hpp"
#include "tisim/simulator.hpp"

namespace tisim {

enum class Algorithm : std::uint8_t { greedy, causal_pibt, causal_pibt_plus, fsp, mcp };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view text);
bool needs_plan(Algorithm a);

struct SolverSpec {
  enum class Kind : std::uint8_t { cbs, ecbs } kind = Kind::cbs;
  double w = 1.1;
  ConflictMode mode = ConflictMode::following_semantics;
  SolverOptions options;
};

// "cbs", "ecbs" or "ecbs:<w>".
std::optional<SolverSpec> parse_solver(std::string_view text);
SolveResult solve(const Instance& instance, const SolverSpec& spec);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

// Formats p_bar the same way everywhere it appears in output and seeds.
std::string format_p_bar(double p_bar);

struct RunSpec {
  std::string map_name;
  std::string scen_name;
  Algorithm algorithm = Algorithm::causal_pibt;
  double p_bar = 0.0;
  std::uint64_t seed = 0;
  std::size_t activation_bound = 10'000;
  bool check_invariants = false;
  bool greedy_faithful = false;  // see PlannerOptions
};

// Stream seeds for one run. The delay stream ignores the algorithm so that
// algorithms compared on one cell see the same delay probabilities.
std::uint64_t delay_stream_seed(const RunSpec& spec, std::size_t agents);
std::uint64_t execution_stream_seed(const RunSpec& spec, std::size_t agents);

struct RunOutcome {
  Metrics metrics;
  ExecutionTrace trace;
  std::string error;  // set when the run could not be carried out
};

// plan is required for causal_pibt_plus, fsp and mcp.
RunOutcome execute_run(const Instance& instance, const RunSpec& spec, const Plan* plan);

inline constexpr std::string_view kCsvHeader =
    "map,scen,agents,algorithm,p_bar,seed,success,soc,makespan,activations";

std::string csv_row(const RunSpec& spec, std::size_t agents, const Metrics& metrics);

struct CampaignConfig {
  std::string map;
  std::string scen;
  std::vector<std::size_t> agents;
  std::vector<double> p_bars{0.0};
  std::vector<Algorithm> algorithms;
  std::size_t repetitions = 1;
  std::uint64_t seed_base = 0;
  std::size_t activation_bound = 10'000;
  std::string output;
  SolverSpec solver;
  std::size_t workers = 0;  // 0: TISIM_WORKERS, else hardware concurrency
};

// key=value lines; list values are comma-separated; `#` starts a comment.
// Relative map/scen/output paths resolve against base_dir when given.
CampaignConfig parse_campaign_config(std::string_view text, const std::string& base_dir = {});

struct CampaignRow {
  RunSpec spec;
  std::size_t agents = 0;
  Metrics metrics;
  std::string error;
};

std::vector<CampaignRow> run_campaign(const CampaignConfig& config);

std::string campaign_csv(const std::vector<CampaignRow>& rows);

// Per (agents, algorithm, p_bar): runs, successes, SOC mean/median/quartiles.
std::string campaign_summary(const std::vector<CampaignRow>& rows);

std::size_t worker_count(std::size_t requested);

}  // namespace tisim
