#include "tisim/planners.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace tisim {

std::string_view to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::greedy: return "greedy";
    case PlannerKind::causal_pibt: return "causal_pibt";
    case PlannerKind::causal_pibt_plus: return "causal_pibt_plus";
  }
  return "?";
}

std::optional<PlannerKind> parse_planner_kind(std::string_view text) {
  if (text == "greedy") return PlannerKind::greedy;
  if (text == "causal_pibt") return PlannerKind::causal_pibt;
  if (text == "causal_pibt_plus") return PlannerKind::causal_pibt_plus;
  return std::nullopt;
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::none: return "none";
    case ActionKind::update: return "update";
    case ActionKind::request: return "request";
    case ActionKind::revert: return "revert";
    case ActionKind::extend: return "extend";
    case ActionKind::finish: return "finish";
  }
  return "?";
}

namespace {

NodeSet local_nodes(const Graph& g, NodeId v) {
  auto adj = g.neighbors(v);
  std::vector<NodeId> nodes(adj.begin(), adj.end());
  nodes.push_back(v);
  return NodeSet(std::move(nodes));
}

// Winner order for interactions: ptmp, then pori, then smaller id.
bool stronger(const AgentState& a, const AgentState& b) {
  if (a.ptmp != b.ptmp) return a.ptmp > b.ptmp;
  if (a.pori != b.pori) return a.pori > b.pori;
  return a.id < b.id;
}

std::vector<AgentId> requesters_of(const Configuration& config, NodeId v) {
  std::vector<AgentId> out;
  for (const auto& a : config.agents()) {
    if (a.mode == Mode::requesting && a.head == v) out.push_back(a.id);
  }
  return out;
}

AgentId strongest(const Configuration& config, const std::vector<AgentId>& group) {
  AgentId best = group.front();
  for (AgentId j : group) {
    if (stronger(config[j], config[best])) best = j;
  }
  return best;
}

bool detach_from_parent(Configuration& config, AgentId i) {
  AgentId p = config[i].parent;
  if (p == i) return false;
  config.agent_mut(p).children.erase(i);
  config.agent_mut(i).parent = i;
  return true;
}

ActivationResult result(bool changed) {
  return {changed, changed ? ActionKind::update : ActionKind::none};
}

}  // namespace

NodeId nearest_to_goal(const Graph& graph, NodeId goal, std::span<const NodeId> nodes) {
  auto dist = graph.distances_to(goal);
  NodeId best = kNoNode;
  for (NodeId v : nodes) {
    if (best == kNoNode || std::make_pair(dist[v], v) < std::make_pair(dist[best], best)) best = v;
  }
  return best;
}

NodeId hinted_select_node(const Graph& graph, const AgentState& agent, const NodeSet& candidates) {
  const auto& items = candidates.items();
  if (!agent.hint || items.empty()) return nearest_to_goal(graph, agent.goal, items);
  const auto& path = agent.hint->path;
  const std::size_t clock = agent.hint->clock;
  if (clock + 1 >= path.size()) return nearest_to_goal(graph, agent.goal, items);

  NodeId next = path[clock + 1];
  if (agent.tail == path[clock] && candidates.contains(next)) return next;

  auto to_goal = graph.distances_to(agent.goal);
  NodeId best = kNoNode;
  std::tuple<std::int32_t, std::int32_t, NodeId> best_key{};
  for (NodeId v : items) {
    std::int32_t to_rest = kUnreachable;
    for (std::size_t k = clock + 1; k < path.size(); ++k) {
      to_rest = std::min(to_rest, graph.distance(v, path[k]));
    }
    std::tuple key{to_rest, to_goal[v], v};
    if (best == kNoNode || key < best_key) {
      best = v;
      best_key = key;
    }
  }
  return best;
}

std::vector<NodeId> compress_plan(std::span<const NodeId> path) {
  std::vector<NodeId> out;
  for (NodeId v : path) {
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

bool advance_hint_clock(AgentState& agent) {
  if (!agent.hint || agent.head == kNoNode) return false;
  auto& h = *agent.hint;
  for (std::size_t k = h.clock + 1; k < h.path.size(); ++k) {
    if (h.path[k] == agent.head) {
      h.clock = k;
      return true;
    }
  }
  return false;
}

void attach_hints(Configuration& config, const std::vector<std::vector<NodeId>>& paths) {
  if (paths.size() != config.size()) throw std::invalid_argument("hint plan must cover all agents");
  for (std::size_t k = 0; k < paths.size(); ++k) {
    auto& a = config.agent_mut(static_cast<AgentId>(k));
    if (paths[k].empty() || paths[k].front() != a.tail) {
      throw std::invalid_argument("hint path of agent " + std::to_string(k) +
                                  " does not start at its location");
    }
    a.hint = HintState{compress_plan(paths[k]), 0};
  }
}

bool release_children(Configuration& config, AgentId i) {
  auto& a = config.agent_mut(i);
  if (a.children.empty()) return false;
  for (AgentId c : a.children) config.agent_mut(c).parent = c;
  a.children.clear();
  return true;
}

bool reset(Configuration& config, AgentId i) {
  auto& a = config.agent_mut(i);
  NodeSet full = local_nodes(config.graph(), a.tail);
  bool changed = !a.searched.empty() || !(a.candidates == full) || !(a.ptmp == a.pori);
  a.searched.clear();
  a.candidates = std::move(full);
  a.ptmp = a.pori;
  return changed;
}

bool priority_inheritance(Configuration& config, AgentId i) {
  auto requesters = requesters_of(config, config[i].tail);
  if (requesters.empty()) return false;
  AgentId k = strongest(config, requesters);
  if (config[k].ptmp <= config[i].ptmp) return false;

  release_children(config, i);
  detach_from_parent(config, i);
  auto& a = config.agent_mut(i);
  auto& parent = config.agent_mut(k);
  a.parent = k;
  parent.children.insert(i);
  a.ptmp = parent.ptmp;
  a.searched = parent.searched;
  if (a.head != kNoNode) a.searched.insert(a.head);
  a.candidates = local_nodes(config.graph(), a.tail);
  a.candidates.erase_all(a.searched);
  return true;
}

ActivationResult greedy_activate(Configuration& config, AgentId i, const PlannerOptions& options) {
  const AgentState& a = config[i];
  switch (a.mode) {
    case Mode::contracted: {
      if (!options.greedy_faithful && a.tail == a.goal) return {};
      NodeId u = nearest_to_goal(config.graph(), a.goal, config.graph().neighbors(a.tail));
      if (u == kNoNode) return {};
      config.apply(i, Transition::request(u));
      return {true, ActionKind::request};
    }
    case Mode::requesting:
      if (config.occupied(a.head)) return {};
      config.apply(i, Transition::extend());
      return {true, ActionKind::extend};
    case Mode::extended:
      config.apply(i, Transition::finish());
      reset(config, i);
      return {true, ActionKind::finish};
  }
  return {};
}

ActivationResult causal_pibt_activate(Configuration& config, AgentId i, bool use_hints) {
  switch (config[i].mode) {
    case Mode::contracted: {
      bool changed = false;
      if (config[i].candidates.empty() && config[i].parent == i) {
        // relay the release to children, then start over
        changed |= release_children(config, i);
        changed |= reset(config, i);
      }
      changed |= priority_inheritance(config, i);

      if (config[i].candidates.empty()) {
        // backtracking: the parent gives up the request aimed at our tail
        AgentId j = config[i].parent;
        if (j != i && config[j].head == config[i].tail) {
          auto& parent = config.agent_mut(j);
          parent.searched.insert_all(config[i].searched);
          parent.candidates.erase_all(parent.searched);
          config.apply(j, Transition::revert());
          changed = true;
        }
        return result(changed);
      }

      const AgentState& a = config[i];
      NodeId u = use_hints ? hinted_select_node(config.graph(), a, a.candidates)
                           : nearest_to_goal(config.graph(), a.goal, a.candidates.items());
      if (u == a.tail) {
        changed |= release_children(config, i);
        changed |= reset(config, i);
        return result(changed);
      }
      auto& self = config.agent_mut(i);
      self.candidates.erase(u);
      self.searched.insert(u);
      self.searched.insert(self.tail);
      config.apply(i, Transition::request(u));
      return {true, ActionKind::request};
    }

    case Mode::requesting: {
      bool changed = priority_inheritance(config, i);
      const AgentState& a = config[i];
      if (a.parent != i && config[a.parent].searched.contains(a.head)) {
        // deadlock resolution: the tree already searched our head
        config.apply(i, Transition::revert());
        return {true, ActionKind::revert};
      }
      if (config.occupied(a.head)) return result(changed);

      auto contenders = requesters_of(config, a.head);
      AgentId winner = strongest(config, contenders);
      for (AgentId j : contenders) {
        if (j == winner) continue;
        config.apply(j, Transition::revert());
        changed = true;
      }
      if (winner != i) return result(changed);

      detach_from_parent(config, i);
      release_children(config, i);
      config.apply(i, Transition::extend());
      return {true, ActionKind::extend};
    }

    case Mode::extended: {
      if (use_hints) advance_hint_clock(config.agent_mut(i));
      config.apply(i, Transition::finish());
      auto& a = config.agent_mut(i);
      if (a.tail == a.goal) a.pori.epoch = config.next_goal_epoch();
      reset(config, i);
      return {true, ActionKind::finish};
    }
  }
  return {};
}

ActivationResult activate(Configuration& config, AgentId i, PlannerKind kind,
                          const PlannerOptions& options) {
  switch (kind) {
    case PlannerKind::greedy: return greedy_activate(config, i, options);
    case PlannerKind::causal_pibt: return causal_pibt_activate(config, i, false);
    case PlannerKind::causal_pibt_plus: return causal_pibt_activate(config, i, true);
  }
  return {};
}

}  // namespace tisim
