#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tisim/model.hpp"
#include "tisim/planners.hpp"

namespace tisim {

using Rng = std::mt19937_64;

struct DelayModel {
  std::vector<double> p;  // per-agent failure probability of a move attempt
  double p_bar = 0.0;
};

// n independent draws from U[0, p_bar]; throws DomainError outside [0, 1].
DelayModel sample_delays(std::size_t n, double p_bar, Rng& rng);

struct AgentSnapshot {
  Mode mode = Mode::contracted;
  NodeId tail = kNoNode;
  NodeId head = kNoNode;

  bool operator==(const AgentSnapshot&) const = default;
};

enum class Termination : std::uint8_t { strong, weak_only, failed };
std::string_view to_string(Termination t);

struct ExecutionTrace {
  std::vector<std::vector<AgentSnapshot>> timesteps;  // [0] is the initial configuration
  std::vector<std::size_t> activations;               // cumulative count at each snapshot
  std::size_t activations_total = 0;
  std::vector<std::optional<int>> goal_first_visit;
  Termination terminated = Termination::failed;

  bool operator==(const ExecutionTrace&) const = default;
};

struct Metrics {
  bool success = false;
  std::optional<int> soc;
  std::optional<int> makespan;
  std::size_t activations = 0;
  std::uint64_t seed = 0;
  double p_bar = 0.0;

  bool operator==(const Metrics&) const = default;
};

// Earliest-rest SOC and makespan over the snapshot tails; empty unless the
// trace ended in strong termination.
Metrics compute_metrics(const ExecutionTrace& trace, const std::vector<NodeId>& goals);

std::vector<AgentSnapshot> snapshot(const Configuration& config);

// Called after every activation with the agent and what it did.
using ActivationObserver = std::function<void(const Configuration&, AgentId, ActionKind)>;

struct Phase2Result {
  std::size_t activations = 0;
  std::size_t changes = 0;
  bool stable = false;  // false when the cap was hit first
};

// Randomized passes over the non-extended agents until one full pass changes
// nothing. cap = 0 selects 50 * n * max_degree.
Phase2Result phase2_until_stable(Configuration& config, PlannerKind planner, Rng& rng,
                                 std::size_t cap = 0, const PlannerOptions& options = {},
                                 const ActivationObserver& observer = {});

// Completes every extended agent with probability 1 - p_i. All draws are made
// first, then completions are applied in id order. Returns the activations.
std::size_t phase1(Configuration& config, PlannerKind planner, const DelayModel& delays, Rng& rng,
                   const PlannerOptions& options = {}, const ActivationObserver& observer = {});

struct RunOptions {
  std::size_t activation_bound = 10'000;
  std::size_t phase2_cap = 0;
  bool check_invariants = false;
  PlannerOptions planner;
  ActivationObserver observer;
};

struct RunReport {
  Metrics metrics;
  ExecutionTrace trace;
  std::optional<std::size_t> weak_termination_activation;
  std::vector<Violation> violations;  // first violating activation, when checking
  std::string diagnostic;
  // Request cycle present at the end of the run, and for how many consecutive
  // timesteps some cycle had been present.
  std::optional<std::vector<AgentId>> final_cycle;
  std::size_t cycle_timesteps = 0;
};

// Initial priorities get distinct tiebreaks in a random order drawn from rng.
// causal_pibt_plus requires hint paths (plan paths per agent).
RunReport run_time_independent(const Instance& instance, PlannerKind planner,
                               const DelayModel& delays, Rng& rng, const RunOptions& options = {},
                               const std::vector<std::vector<NodeId>>* hints = nullptr);

// `timesteps <T> agents <n>` then `t agent mode tail head` lines, `-` for a void head.
std::string write_trace(const ExecutionTrace& trace);

}  // namespace tisim
