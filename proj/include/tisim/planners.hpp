#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tisim/model.hpp"

namespace tisim {

enum class PlannerKind : std::uint8_t { greedy, causal_pibt, causal_pibt_plus };

std::string_view to_string(PlannerKind kind);
std::optional<PlannerKind> parse_planner_kind(std::string_view text);

struct PlannerOptions {
  // Literal Greedy: a contracted agent at its goal still requests a neighbor.
  bool greedy_faithful = false;
};

// What the activated agent itself did.
enum class ActionKind : std::uint8_t { none, update, request, revert, extend, finish };
std::string_view to_string(ActionKind kind);

struct ActivationResult {
  bool changed = false;
  ActionKind action = ActionKind::none;
};

ActivationResult greedy_activate(Configuration& config, AgentId i,
                                 const PlannerOptions& options = {});

// One atomic Causal-PIBT step for agent i. With use_hints, node selection
// follows the agent's HintState when present.
ActivationResult causal_pibt_activate(Configuration& config, AgentId i, bool use_hints = false);

ActivationResult activate(Configuration& config, AgentId i, PlannerKind kind,
                          const PlannerOptions& options = {});

// Sub-procedures of Causal-PIBT. Each returns true iff the configuration changed.
bool priority_inheritance(Configuration& config, AgentId i);
bool release_children(Configuration& config, AgentId i);
bool reset(Configuration& config, AgentId i);

// argmin over nodes of (distance to goal, node id); kNoNode when empty.
NodeId nearest_to_goal(const Graph& graph, NodeId goal, std::span<const NodeId> nodes);

NodeId hinted_select_node(const Graph& graph, const AgentState& agent, const NodeSet& candidates);

std::vector<NodeId> compress_plan(std::span<const NodeId> path);

// Moves the clock to the earliest later plan index equal to head; returns
// true iff the clock moved.
bool advance_hint_clock(AgentState& agent);

// Installs compressed per-agent paths as hint state. paths[i][0] must equal
// agent i's tail.
void attach_hints(Configuration& config, const std::vector<std::vector<NodeId>>& paths);

}  // namespace tisim
