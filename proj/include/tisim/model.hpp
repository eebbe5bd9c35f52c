#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tisim/graph.hpp"
#include "tisim/types.hpp"

namespace tisim {

enum class Mode : std::uint8_t { contracted, requesting, extended };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

// Lexicographic (epoch, tiebreak); a larger value is a higher priority.
// Tiebreaks are fixed per agent and distinct, so original priorities never tie.
struct Priority {
  std::int64_t epoch = 0;
  double tiebreak = 0.0;

  auto operator<=>(const Priority&) const = default;
  bool operator==(const Priority&) const = default;
};

// Plan-following state used by the hinted planner.
struct HintState {
  std::vector<NodeId> path;  // compressed: no two consecutive equal nodes
  std::size_t clock = 0;

  bool operator==(const HintState&) const = default;
};

struct AgentState {
  AgentId id = kNoAgent;
  Mode mode = Mode::contracted;
  NodeId tail = kNoNode;
  NodeId head = kNoNode;  // kNoNode iff contracted
  AgentId parent = kNoAgent;
  AgentSet children;
  NodeSet candidates;  // C
  NodeSet searched;    // S
  Priority pori;
  Priority ptmp;
  NodeId goal = kNoNode;
  std::optional<HintState> hint;

  bool operator==(const AgentState&) const = default;
};

struct Transition {
  enum class Kind : std::uint8_t { request, revert, extend, finish };
  Kind kind;
  NodeId target = kNoNode;  // request only

  static Transition request(NodeId u) { return {Kind::request, u}; }
  static Transition revert() { return {Kind::revert, kNoNode}; }
  static Transition extend() { return {Kind::extend, kNoNode}; }
  static Transition finish() { return {Kind::finish, kNoNode}; }
};

std::string_view to_string(Transition::Kind kind);

struct IllegalTransition : std::logic_error {
  using std::logic_error::logic_error;
};

// Global tuple of agent states. The agent array is authoritative; the
// per-node occupancy index is derived and maintained by apply().
//
// Mode, tail and head change only through apply(). The remaining agent
// fields (tree links, C, S, priorities, hint) are edited through agent_mut().
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::shared_ptr<const Graph> graph, std::vector<AgentState> agents);

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  std::size_t size() const { return agents_.size(); }
  const AgentState& operator[](AgentId i) const { return agents_[i]; }
  const std::vector<AgentState>& agents() const { return agents_; }
  AgentState& agent_mut(AgentId i) { return agents_[i]; }

  // Positive occupancy: some agent has tail v, or an extended agent has head v.
  bool occupied(NodeId v) const;
  AgentId tail_owner(NodeId v) const { return tail_owner_[v]; }
  AgentId extended_head_owner(NodeId v) const { return head_owner_[v]; }

  // Atomic mode transition of agent i; throws IllegalTransition.
  void apply(AgentId i, Transition t);

  // Monotone source for goal-arrival epochs: each call returns a value
  // strictly below every value returned before.
  std::int64_t next_goal_epoch() { return -(++goal_drops_); }
  std::int64_t goal_drops() const { return goal_drops_; }
  void set_goal_drops(std::int64_t v) { goal_drops_ = v; }

  bool operator==(const Configuration& other) const {
    return agents_ == other.agents_ && goal_drops_ == other.goal_drops_;
  }

  // Recomputes the occupancy index from the agent array.
  void rebuild_index();
  // True when the index agrees with the agent array.
  bool index_consistent() const;

 private:
  std::shared_ptr<const Graph> graph_;
  std::vector<AgentState> agents_;
  std::vector<AgentId> tail_owner_;
  std::vector<AgentId> head_owner_;
  std::int64_t goal_drops_ = 0;
};

// Functional form: returns the successor configuration.
Configuration apply_transition(Configuration config, AgentId i, Transition t);

inline bool occupied(const Configuration& config, NodeId v) { return config.occupied(v); }

// All agents contracted at starts, C = Neigh(tail) + tail, S empty, parent = self.
// Agents starting on their goal get a dropped epoch, as if they had just arrived.
// tiebreaks[i] must be distinct values in (0, 1).
Configuration make_initial_configuration(const Instance& instance,
                                         const std::vector<double>& tiebreaks);
// Tiebreak rank derived from agent index: agent 0 gets the highest priority.
std::vector<double> index_tiebreaks(std::size_t n);

// Cycles of requesting agents a_k..a_l with head_k = tail_{k+1}, ..., head_l = tail_k.
std::vector<std::vector<AgentId>> find_request_cycles(const Configuration& config);
std::optional<std::vector<AgentId>> detect_request_cycle(const Configuration& config);

bool strong_termination(const Configuration& config);
bool weak_termination(const std::vector<bool>& reached_goal);
// Sets flag i when agent i is contracted at its goal; returns true if any flag changed.
bool update_goal_flags(const Configuration& config, std::vector<bool>& reached_goal);

struct Violation {
  std::string kind;
  std::string detail;
};

// Structural invariants: distinct tails, occupancy consistency, head adjacency,
// parent/children symmetry, parent-child graph acyclic, ptmp >= pori, pori
// uniqueness, C within Neigh(tail)+tail, C and S overlapping at most in tail.
std::vector<Violation> check_config_invariants(const Configuration& config);

// Agents in one component of the parent-child graph share one ptmp.
std::vector<Violation> check_tree_priorities(const Configuration& config);

std::string format_violations(const std::vector<Violation>& violations);

// One line per activation: `<agent> <action> <tail> <head> <mode>`, with `-`
// for a void head.
std::string format_activation_line(AgentId agent, std::string_view action,
                                   const AgentState& state);

}  // namespace tisim
