#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tisim/graph.hpp"

namespace tisim {

enum class ConflictMode : std::uint8_t {
  swap_semantics,       // vertex + swap conflicts
  following_semantics,  // vertex + following conflicts (contains swap)
};

std::string_view to_string(ConflictMode mode);
std::optional<ConflictMode> parse_conflict_mode(std::string_view text);

// Per-agent timed paths, padded with goal stays to a common horizon.
struct Plan {
  std::vector<std::vector<NodeId>> paths;
  int horizon = 0;

  std::size_t agent_count() const { return paths.size(); }
  bool operator==(const Plan&) const = default;
};

// Pads every path with its last node up to the longest path.
Plan make_plan(std::vector<std::vector<NodeId>> paths);

struct PlanCheck {
  enum class Status { ok, conflict, structural };
  Status status = Status::ok;
  std::string message;
  int time = -1;
  AgentId agent1 = kNoAgent;
  AgentId agent2 = kNoAgent;

  bool ok() const { return status == Status::ok; }
};

PlanCheck validate_plan(const Plan& plan, const Instance& instance, ConflictMode mode);

// Earliest timestep after which the path rests at its final node.
int path_cost(const std::vector<NodeId>& path);
int soc(const Plan& plan);
int makespan(const Plan& plan);

struct SolverOptions {
  std::size_t max_expansions = 50'000;            // high-level nodes
  std::size_t max_low_level_expansions = 2'000'000;  // per low-level call
};

enum class SolveStatus { solved, unsolvable, budget_exceeded };
std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::unsolvable;
  std::optional<Plan> plan;
  std::size_t expansions = 0;
  int lower_bound = 0;  // sum of per-agent lower bounds of the returned node
};

// SOC-optimal under the given conflict semantics.
SolveResult cbs_solve(const Instance& instance, ConflictMode mode, const SolverOptions& options = {});

// Bounded-suboptimal: SOC <= w * optimal SOC. w = 1 degenerates to CBS.
SolveResult ecbs_solve(const Instance& instance, double w, ConflictMode mode,
                       const SolverOptions& options = {});

// Plan file: `agents <n> horizon <T>` then one line per agent with T+1
// space-separated nodes, written as `x,y` cells on grid graphs.
std::string write_plan(const Plan& plan, const Graph& graph);
Plan read_plan(std::string_view text, const Graph& graph);

}  // namespace tisim
