#include "tisim/model.hpp"

#include <algorithm>
#include <sstream>

namespace tisim {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::contracted: return "contracted";
    case Mode::requesting: return "requesting";
    case Mode::extended: return "extended";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "contracted") return Mode::contracted;
  if (text == "requesting") return Mode::requesting;
  if (text == "extended") return Mode::extended;
  return std::nullopt;
}

std::string_view to_string(Transition::Kind kind) {
  switch (kind) {
    case Transition::Kind::request: return "request";
    case Transition::Kind::revert: return "revert";
    case Transition::Kind::extend: return "extend";
    case Transition::Kind::finish: return "finish";
  }
  return "?";
}

Configuration::Configuration(std::shared_ptr<const Graph> graph, std::vector<AgentState> agents)
    : graph_(std::move(graph)), agents_(std::move(agents)) {
  rebuild_index();
}

void Configuration::rebuild_index() {
  tail_owner_.assign(graph_->node_count(), kNoAgent);
  head_owner_.assign(graph_->node_count(), kNoAgent);
  for (const auto& a : agents_) {
    if (graph_->valid(a.tail)) tail_owner_[a.tail] = a.id;
    if (a.mode == Mode::extended && graph_->valid(a.head)) head_owner_[a.head] = a.id;
  }
}

bool Configuration::index_consistent() const {
  std::vector<AgentId> tails(graph_->node_count(), kNoAgent);
  std::vector<AgentId> heads(graph_->node_count(), kNoAgent);
  for (const auto& a : agents_) {
    if (graph_->valid(a.tail)) tails[a.tail] = a.id;
    if (a.mode == Mode::extended && graph_->valid(a.head)) heads[a.head] = a.id;
  }
  return tails == tail_owner_ && heads == head_owner_;
}

bool Configuration::occupied(NodeId v) const {
  return tail_owner_[v] != kNoAgent || head_owner_[v] != kNoAgent;
}

void Configuration::apply(AgentId i, Transition t) {
  AgentState& a = agents_.at(i);
  auto illegal = [&](const std::string& why) {
    return IllegalTransition("agent " + std::to_string(i) + ": " + std::string(to_string(t.kind)) +
                             " from " + std::string(to_string(a.mode)) + ": " + why);
  };
  switch (t.kind) {
    case Transition::Kind::request:
      if (a.mode != Mode::contracted) throw illegal("requires contracted");
      if (!graph_->valid(t.target) || !graph_->adjacent(a.tail, t.target)) {
        throw illegal("target is not a neighbor of tail");
      }
      a.head = t.target;
      a.mode = Mode::requesting;
      break;
    case Transition::Kind::revert:
      if (a.mode != Mode::requesting) throw illegal("requires requesting");
      a.head = kNoNode;
      a.mode = Mode::contracted;
      break;
    case Transition::Kind::extend:
      if (a.mode != Mode::requesting) throw illegal("requires requesting");
      if (occupied(a.head)) throw illegal("head is occupied");
      a.mode = Mode::extended;
      head_owner_[a.head] = i;
      break;
    case Transition::Kind::finish:
      if (a.mode != Mode::extended) throw illegal("requires extended");
      head_owner_[a.head] = kNoAgent;
      tail_owner_[a.tail] = kNoAgent;
      a.tail = a.head;
      a.head = kNoNode;
      a.mode = Mode::contracted;
      tail_owner_[a.tail] = i;
      break;
  }
}

Configuration apply_transition(Configuration config, AgentId i, Transition t) {
  config.apply(i, t);
  return config;
}

std::vector<double> index_tiebreaks(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<double>(n - i) / static_cast<double>(n + 1);
  }
  return out;
}

Configuration make_initial_configuration(const Instance& instance,
                                         const std::vector<double>& tiebreaks) {
  validate_instance(instance);
  const std::size_t n = instance.agent_count();
  if (tiebreaks.size() != n) throw std::invalid_argument("one tiebreak per agent required");
  const Graph& g = *instance.graph;
  std::vector<AgentState> agents(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(tiebreaks[k] > 0.0 && tiebreaks[k] < 1.0)) {
      throw std::invalid_argument("tiebreak outside (0, 1)");
    }
    AgentState& a = agents[k];
    a.id = static_cast<AgentId>(k);
    a.tail = instance.starts[k];
    a.goal = instance.goals[k];
    a.parent = a.id;
    a.pori = Priority{0, tiebreaks[k]};
    a.ptmp = a.pori;
    std::vector<NodeId> c(g.neighbors(a.tail).begin(), g.neighbors(a.tail).end());
    c.push_back(a.tail);
    a.candidates = NodeSet(std::move(c));
  }
  std::vector<double> sorted = tiebreaks;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("tiebreaks must be distinct");
  }
  Configuration config(instance.graph, std::move(agents));
  // agents that start on their goal have already arrived
  for (std::size_t k = 0; k < n; ++k) {
    auto& a = config.agent_mut(static_cast<AgentId>(k));
    if (a.tail != a.goal) continue;
    a.pori.epoch = config.next_goal_epoch();
    a.ptmp = a.pori;
  }
  return config;
}

std::vector<std::vector<AgentId>> find_request_cycles(const Configuration& config) {
  // Each requesting agent points at the owner of its head's tail claim: a
  // functional graph, so cycles are disjoint.
  const std::size_t n = config.size();
  std::vector<AgentId> next(n, kNoAgent);
  for (const auto& a : config.agents()) {
    if (a.mode != Mode::requesting) continue;
    AgentId owner = config.tail_owner(a.head);
    if (owner != kNoAgent && config[owner].mode == Mode::requesting) next[a.id] = owner;
  }
  std::vector<int> color(n, 0);  // 0 unvisited, 1 on current walk, 2 done
  std::vector<std::vector<AgentId>> cycles;
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] != 0) continue;
    std::vector<AgentId> walk;
    AgentId v = static_cast<AgentId>(s);
    while (v != kNoAgent && color[v] == 0) {
      color[v] = 1;
      walk.push_back(v);
      v = next[v];
    }
    if (v != kNoAgent && color[v] == 1) {
      auto it = std::find(walk.begin(), walk.end(), v);
      std::vector<AgentId> cycle(it, walk.end());
      // rotate so the smallest id leads; keeps reports deterministic
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      cycles.push_back(std::move(cycle));
    }
    for (AgentId w : walk) color[w] = 2;
  }
  return cycles;
}

std::optional<std::vector<AgentId>> detect_request_cycle(const Configuration& config) {
  auto cycles = find_request_cycles(config);
  if (cycles.empty()) return std::nullopt;
  return cycles.front();
}

bool strong_termination(const Configuration& config) {
  return std::all_of(config.agents().begin(), config.agents().end(), [](const AgentState& a) {
    return a.mode == Mode::contracted && a.tail == a.goal;
  });
}

bool weak_termination(const std::vector<bool>& reached_goal) {
  return std::all_of(reached_goal.begin(), reached_goal.end(), [](bool b) { return b; });
}

bool update_goal_flags(const Configuration& config, std::vector<bool>& reached_goal) {
  bool changed = false;
  for (const auto& a : config.agents()) {
    if (!reached_goal[a.id] && a.mode == Mode::contracted && a.tail == a.goal) {
      reached_goal[a.id] = true;
      changed = true;
    }
  }
  return changed;
}

std::vector<Violation> check_config_invariants(const Configuration& config) {
  std::vector<Violation> out;
  const Graph& g = config.graph();
  const auto& agents = config.agents();
  const std::size_t n = agents.size();
  auto report = [&](std::string kind, std::string detail) {
    out.push_back({std::move(kind), std::move(detail)});
  };
  auto name = [](AgentId i) { return "a" + std::to_string(i); };

  std::vector<AgentId> tail_at(g.node_count(), kNoAgent);
  std::vector<AgentId> head_at(g.node_count(), kNoAgent);
  for (const auto& a : agents) {
    if (!g.valid(a.tail)) {
      report("invalid tail", name(a.id));
      continue;
    }
    if (tail_at[a.tail] != kNoAgent) {
      report("duplicate tail", name(tail_at[a.tail]) + " and " + name(a.id) + " at node " +
                                   std::to_string(a.tail));
    }
    tail_at[a.tail] = a.id;
  }
  for (const auto& a : agents) {
    if ((a.head == kNoNode) != (a.mode == Mode::contracted)) {
      report("head/mode mismatch", name(a.id) + " mode " + std::string(to_string(a.mode)));
    }
    if (a.head != kNoNode) {
      if (!g.valid(a.head) || !g.adjacent(a.tail, a.head)) {
        report("head not adjacent", name(a.id));
      }
    }
    if (a.mode == Mode::extended && g.valid(a.head)) {
      if (tail_at[a.head] != kNoAgent) {
        report("extended head on tail", name(a.id) + " head " + std::to_string(a.head) +
                                            " is tail of " + name(tail_at[a.head]));
      }
      if (head_at[a.head] != kNoAgent) {
        report("duplicate extended head", name(head_at[a.head]) + " and " + name(a.id));
      }
      head_at[a.head] = a.id;
    }
  }
  if (!config.index_consistent()) report("occupancy index", "index disagrees with agent states");

  for (const auto& a : agents) {
    if (a.parent < 0 || static_cast<std::size_t>(a.parent) >= n) {
      report("invalid parent", name(a.id));
      continue;
    }
    if (a.parent != a.id && !agents[a.parent].children.contains(a.id)) {
      report("parent/children asymmetry",
             name(a.id) + " has parent " + name(a.parent) + " which does not list it");
    }
    for (AgentId c : a.children) {
      if (c < 0 || static_cast<std::size_t>(c) >= n || agents[c].parent != a.id || c == a.id) {
        report("parent/children asymmetry", name(a.id) + " lists child " + std::to_string(c));
      }
    }
    if (a.ptmp < a.pori) report("ptmp below pori", name(a.id));

    std::vector<NodeId> local(g.neighbors(a.tail).begin(), g.neighbors(a.tail).end());
    local.push_back(a.tail);
    NodeSet allowed(std::move(local));
    for (NodeId v : a.candidates) {
      if (!allowed.contains(v)) {
        report("candidate outside neighborhood", name(a.id) + " node " + std::to_string(v));
      }
    }
    for (NodeId v : a.candidates) {
      if (v != a.tail && a.searched.contains(v)) {
        report("C and S overlap", name(a.id) + " node " + std::to_string(v));
      }
    }
  }

  // Parent pointers form a functional graph; the parent-child graph is a forest
  // iff the only cycles are self-loops at roots.
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on current walk, 2 done
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<AgentId> walk;
    AgentId v = static_cast<AgentId>(s);
    bool reached_root = false;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      AgentId p = agents[v].parent;
      if (p == v || p < 0 || static_cast<std::size_t>(p) >= n) {
        reached_root = true;
        break;
      }
      v = p;
    }
    if (!reached_root && state[v] == 1) {
      report("H not a forest", "parent cycle through " + name(v));
    }
    for (AgentId w : walk) state[w] = 2;
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (agents[i].pori == agents[j].pori) {
        report("pori not unique", name(static_cast<AgentId>(i)) + " and " +
                                      name(static_cast<AgentId>(j)));
      }
    }
  }
  return out;
}

std::vector<Violation> check_tree_priorities(const Configuration& config) {
  std::vector<Violation> out;
  const auto& agents = config.agents();
  for (const auto& a : agents) {
    if (a.mode == Mode::extended) continue;
    for (AgentId c : a.children) {
      if (agents[c].mode != Mode::extended && !(agents[c].ptmp == a.ptmp)) {
        out.push_back({"tree ptmp mismatch", "a" + std::to_string(a.id) + " and child a" +
                                                 std::to_string(c)});
      }
    }
  }
  return out;
}

std::string format_violations(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const auto& v : violations) os << v.kind << ": " << v.detail << "\n";
  return os.str();
}

std::string format_activation_line(AgentId agent, std::string_view action,
                                   const AgentState& state) {
  std::ostringstream os;
  os << agent << ' ' << action << ' ' << state.tail << ' ';
  if (state.head == kNoNode) os << '-';
  else os << state.head;
  os << ' ' << to_string(state.mode);
  return os.str();
}

}  // namespace tisim
