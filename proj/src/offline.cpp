#include "tisim/offline.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace tisim {

std::string_view to_string(ConflictMode mode) {
  return mode == ConflictMode::swap_semantics ? "swap" : "following";
}

std::optional<ConflictMode> parse_conflict_mode(std::string_view text) {
  if (text == "swap" || text == "swap_semantics") return ConflictMode::swap_semantics;
  if (text == "following" || text == "following_semantics") return ConflictMode::following_semantics;
  return std::nullopt;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::solved: return "solved";
    case SolveStatus::unsolvable: return "unsolvable";
    case SolveStatus::budget_exceeded: return "budget exceeded";
  }
  return "?";
}

Plan make_plan(std::vector<std::vector<NodeId>> paths) {
  std::size_t longest = 1;
  for (const auto& p : paths) {
    if (p.empty()) throw std::invalid_argument("empty path");
    longest = std::max(longest, p.size());
  }
  for (auto& p : paths) p.resize(longest, p.back());
  return Plan{std::move(paths), static_cast<int>(longest) - 1};
}

int path_cost(const std::vector<NodeId>& path) {
  if (path.empty()) return 0;
  int t = static_cast<int>(path.size()) - 1;
  while (t > 0 && path[t - 1] == path.back()) --t;
  return t;
}

int soc(const Plan& plan) {
  int total = 0;
  for (const auto& p : plan.paths) total += path_cost(p);
  return total;
}

int makespan(const Plan& plan) {
  int worst = 0;
  for (const auto& p : plan.paths) worst = std::max(worst, path_cost(p));
  return worst;
}

namespace {

using Path = std::vector<NodeId>;
using PathPtr = std::shared_ptr<const Path>;

NodeId loc(const Path& p, int t) {
  return t < static_cast<int>(p.size()) ? p[t] : p.back();
}

std::uint64_t vertex_key(NodeId v, int t) {
  return (static_cast<std::uint64_t>(t) << 32) | static_cast<std::uint32_t>(v);
}

std::uint64_t edge_key(NodeId from, NodeId to, int t) {
  return (static_cast<std::uint64_t>(t) << 42) | (static_cast<std::uint64_t>(from) << 21) |
         static_cast<std::uint64_t>(to);
}

struct Constraint {
  enum class Kind { vertex, edge } kind;
  AgentId agent;
  NodeId from;  // edge only
  NodeId node;  // vertex node, or edge target
  int t;
};

struct AgentConstraints {
  std::unordered_set<std::uint64_t> vertex;
  std::unordered_set<std::uint64_t> edge;
  int goal_block_until = -1;
};

AgentConstraints constraints_for(const std::vector<Constraint>& all, AgentId agent, NodeId goal) {
  AgentConstraints out;
  for (const auto& c : all) {
    if (c.agent != agent) continue;
    if (c.kind == Constraint::Kind::vertex) {
      out.vertex.insert(vertex_key(c.node, c.t));
      if (c.node == goal) out.goal_block_until = std::max(out.goal_block_until, c.t);
    } else {
      out.edge.insert(edge_key(c.from, c.node, c.t));
    }
  }
  return out;
}

// Where the other agents are, for counting the conflicts a candidate move creates.
class ConflictTable {
 public:
  ConflictTable(const std::vector<PathPtr>& paths, AgentId self, ConflictMode mode) : mode_(mode) {
    for (std::size_t k = 0; k < paths.size(); ++k) {
      if (static_cast<AgentId>(k) == self || !paths[k]) continue;
      horizon_ = std::max(horizon_, static_cast<int>(paths[k]->size()));
    }
    for (std::size_t k = 0; k < paths.size(); ++k) {
      if (static_cast<AgentId>(k) == self || !paths[k]) continue;
      const Path& p = *paths[k];
      others_.push_back(&p);
      for (int t = 0; t < horizon_; ++t) at_[vertex_key(loc(p, t), t)].push_back(others_.size() - 1);
      final_[p.back()].push_back(others_.size() - 1);
    }
  }

  int transition_conflicts(NodeId from, NodeId to, int t) const {
    if (others_.empty()) return 0;
    int count = 0;
    for (std::size_t j : agents_at(to, t + 1)) {
      (void)j;
      ++count;
    }
    if (mode_ == ConflictMode::following_semantics) {
      for (std::size_t j : agents_at(to, t)) {
        if (loc(*others_[j], t + 1) != to) ++count;  // stays were counted as vertex conflicts
      }
      for (std::size_t j : agents_at(from, t + 1)) {
        if (loc(*others_[j], t) != from) ++count;
      }
    } else if (from != to) {
      for (std::size_t j : agents_at(to, t)) {
        if (loc(*others_[j], t + 1) == from) ++count;
      }
    }
    return count;
  }

 private:
  const std::vector<std::size_t>& agents_at(NodeId v, int t) const {
    static const std::vector<std::size_t> kNone;
    if (t >= horizon_) {
      auto it = final_.find(v);
      return it == final_.end() ? kNone : it->second;
    }
    auto it = at_.find(vertex_key(v, t));
    return it == at_.end() ? kNone : it->second;
  }

  ConflictMode mode_;
  int horizon_ = 0;
  std::vector<const Path*> others_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> at_;
  std::unordered_map<NodeId, std::vector<std::size_t>> final_;
};

struct LowLevelResult {
  enum class Status { found, infeasible, budget } status = Status::infeasible;
  Path path;
  int lower_bound = 0;
};

// Space-time focal search; w = 1 is A* with conflict-count tie-breaking.
LowLevelResult focal_search(const Graph& graph, NodeId start, NodeId goal,
                            const AgentConstraints& cons, const ConflictTable& table, double w,
                            int horizon, std::size_t max_expansions) {
  LowLevelResult out;
  auto dist = graph.distances_to(goal);
  if (dist[start] == kUnreachable) return out;
  if (cons.vertex.count(vertex_key(start, 0))) return out;

  struct Node {
    NodeId v;
    int t;
    int f;
    int conflicts;
    int parent;
    bool open;
    bool in_focal;
  };
  std::vector<Node> pool;
  std::unordered_map<std::uint64_t, int> index;
  std::set<std::pair<int, int>> open;                   // (f, idx)
  std::set<std::tuple<int, int, int, int>> focal;       // (conflicts, f, -t, idx)
  auto focal_key = [&](int idx) {
    const Node& n = pool[idx];
    return std::make_tuple(n.conflicts, n.f, -n.t, idx);
  };
  auto h = [&](NodeId v, int t) { return std::max(dist[v], cons.goal_block_until + 1 - t); };

  int f_min = h(start, 0);
  auto bound = [&] { return static_cast<int>(std::floor(w * f_min + 1e-9)); };

  pool.push_back({start, 0, f_min, 0, -1, true, true});
  index[vertex_key(start, 0)] = 0;
  open.insert({f_min, 0});
  focal.insert(focal_key(0));

  std::size_t expansions = 0;
  while (!open.empty()) {
    int new_min = open.begin()->first;
    if (new_min > f_min) {
      int old_bound = bound();
      f_min = new_min;
      int new_bound = bound();
      for (auto it = open.upper_bound({old_bound, std::numeric_limits<int>::max()});
           it != open.end() && it->first <= new_bound; ++it) {
        Node& n = pool[it->second];
        if (!n.in_focal) {
          n.in_focal = true;
          focal.insert(focal_key(it->second));
        }
      }
    }
    int cur = std::get<3>(*focal.begin());
    focal.erase(focal.begin());
    Node node = pool[cur];
    open.erase({node.f, cur});
    pool[cur].open = false;
    pool[cur].in_focal = false;

    if (node.v == goal && node.t > cons.goal_block_until) {
      for (int k = cur; k != -1; k = pool[k].parent) out.path.push_back(pool[k].v);
      std::reverse(out.path.begin(), out.path.end());
      out.status = LowLevelResult::Status::found;
      out.lower_bound = f_min;
      return out;
    }
    if (++expansions > max_expansions) {
      out.status = LowLevelResult::Status::budget;
      return out;
    }

    const int nt = node.t + 1;
    if (nt > horizon) continue;
    auto adj = graph.neighbors(node.v);
    std::vector<NodeId> moves(adj.begin(), adj.end());
    moves.push_back(node.v);
    for (NodeId next : moves) {
      if (dist[next] == kUnreachable) continue;
      if (cons.vertex.count(vertex_key(next, nt))) continue;
      if (next != node.v && cons.edge.count(edge_key(node.v, next, node.t))) continue;
      int conflicts = node.conflicts + table.transition_conflicts(node.v, next, node.t);
      auto key = vertex_key(next, nt);
      auto found = index.find(key);
      if (found == index.end()) {
        int idx = static_cast<int>(pool.size());
        int f = nt + h(next, nt);
        pool.push_back({next, nt, f, conflicts, cur, true, false});
        index.emplace(key, idx);
        open.insert({f, idx});
        if (f <= bound()) {
          pool[idx].in_focal = true;
          focal.insert(focal_key(idx));
        }
      } else {
        int idx = found->second;
        Node& n = pool[idx];
        if (!n.open || conflicts >= n.conflicts) continue;
        if (n.in_focal) focal.erase(focal_key(idx));
        n.conflicts = conflicts;
        n.parent = cur;
        if (n.in_focal) focal.insert(focal_key(idx));
      }
    }
    if (focal.empty() && !open.empty()) {
      // every remaining node is above the bound; admit the new minimum
      int idx = open.begin()->second;
      f_min = open.begin()->first;
      for (auto it = open.begin(); it != open.end() && it->first <= bound(); ++it) {
        pool[it->second].in_focal = true;
        focal.insert(focal_key(it->second));
      }
      (void)idx;
    }
  }
  return out;
}

struct Conflict {
  enum class Kind { vertex, swap, following } kind;
  AgentId a1;
  AgentId a2;
  NodeId v;  // vertex node; swap: a1 moves u -> v; following: a1 enters v at t+1, a2 was at v at t
  NodeId u;
  int t;
};

int horizon_of(const std::vector<PathPtr>& paths) {
  int longest = 1;
  for (const auto& p : paths) longest = std::max(longest, static_cast<int>(p->size()));
  return longest;
}

// Scans time-ordered; calls visit(conflict) until it returns false.
template <typename Visit>
void scan_conflicts(const std::vector<PathPtr>& paths, ConflictMode mode, Visit visit) {
  const int horizon = horizon_of(paths);
  const std::size_t n = paths.size();
  std::unordered_map<NodeId, AgentId> at;
  for (int t = 0; t < horizon; ++t) {
    at.clear();
    for (std::size_t i = 0; i < n; ++i) {
      NodeId v = loc(*paths[i], t);
      auto [it, inserted] = at.emplace(v, static_cast<AgentId>(i));
      if (!inserted) {
        if (!visit(Conflict{Conflict::Kind::vertex, it->second, static_cast<AgentId>(i), v,
                            kNoNode, t})) {
          return;
        }
      }
    }
    if (t + 1 >= horizon) break;
    for (std::size_t i = 0; i < n; ++i) {
      NodeId from = loc(*paths[i], t);
      NodeId to = loc(*paths[i], t + 1);
      auto occ = at.find(to);
      if (occ == at.end() || occ->second == static_cast<AgentId>(i)) continue;
      AgentId j = occ->second;
      if (mode == ConflictMode::following_semantics) {
        if (!visit(Conflict{Conflict::Kind::following, static_cast<AgentId>(i), j, to, from, t})) {
          return;
        }
      } else if (from != to && loc(*paths[j], t + 1) == from && static_cast<AgentId>(i) < j) {
        if (!visit(Conflict{Conflict::Kind::swap, static_cast<AgentId>(i), j, to, from, t})) return;
      }
    }
  }
}

std::optional<Conflict> first_conflict(const std::vector<PathPtr>& paths, ConflictMode mode) {
  std::optional<Conflict> found;
  scan_conflicts(paths, mode, [&](const Conflict& c) {
    found = c;
    return false;
  });
  return found;
}

int count_conflicting_pairs(const std::vector<PathPtr>& paths, ConflictMode mode) {
  std::set<std::pair<AgentId, AgentId>> pairs;
  scan_conflicts(paths, mode, [&](const Conflict& c) {
    pairs.insert(std::minmax(c.a1, c.a2));
    return true;
  });
  return static_cast<int>(pairs.size());
}

std::pair<Constraint, Constraint> split(const Conflict& c) {
  using K = Constraint::Kind;
  switch (c.kind) {
    case Conflict::Kind::vertex:
      return {{K::vertex, c.a1, kNoNode, c.v, c.t}, {K::vertex, c.a2, kNoNode, c.v, c.t}};
    case Conflict::Kind::swap:
      return {{K::edge, c.a1, c.u, c.v, c.t}, {K::edge, c.a2, c.v, c.u, c.t}};
    case Conflict::Kind::following:
      return {{K::vertex, c.a1, kNoNode, c.v, c.t + 1}, {K::vertex, c.a2, kNoNode, c.v, c.t}};
  }
  throw std::logic_error("unknown conflict kind");
}

int cost_of(const Path& p) { return static_cast<int>(p.size()) - 1; }

struct HighLevelNode {
  std::vector<Constraint> constraints;
  std::vector<PathPtr> paths;
  std::vector<int> lower_bounds;
  int cost = 0;
  int lower_bound = 0;
  int conflicts = 0;
  std::size_t id = 0;
};

class Search {
 public:
  Search(const Instance& instance, double w, ConflictMode mode, const SolverOptions& options)
      : instance_(instance), graph_(*instance.graph), w_(w), mode_(mode), options_(options) {
    validate_instance(instance);
    horizon_ = static_cast<int>(graph_.node_count());
    for (std::size_t i = 0; i < instance.agent_count(); ++i) {
      auto d = graph_.distance(instance.starts[i], instance.goals[i]);
      if (d == kUnreachable) {
        unreachable_ = true;
        continue;
      }
      horizon_ += d;
    }
  }

  // Replans agent i of node under its constraints; false when no path exists.
  bool replan(HighLevelNode& node, AgentId i) {
    auto cons = constraints_for(node.constraints, i, instance_.goals[i]);
    ConflictTable table(node.paths, i, mode_);
    auto res = focal_search(graph_, instance_.starts[i], instance_.goals[i], cons, table, w_,
                            horizon_, options_.max_low_level_expansions);
    if (res.status == LowLevelResult::Status::budget) budget_hit_ = true;
    if (res.status != LowLevelResult::Status::found) return false;
    if (node.paths[i]) {
      node.cost -= cost_of(*node.paths[i]);
      node.lower_bound -= node.lower_bounds[i];
    }
    node.paths[i] = std::make_shared<const Path>(std::move(res.path));
    node.lower_bounds[i] = res.lower_bound;
    node.cost += cost_of(*node.paths[i]);
    node.lower_bound += res.lower_bound;
    return true;
  }

  std::optional<HighLevelNode> root() {
    const std::size_t n = instance_.agent_count();
    HighLevelNode node;
    node.paths.assign(n, nullptr);
    node.lower_bounds.assign(n, 0);
    if (unreachable_) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      if (!replan(node, static_cast<AgentId>(i))) return std::nullopt;
    }
    node.conflicts = count_conflicting_pairs(node.paths, mode_);
    node.id = next_id_++;
    return node;
  }

  std::optional<HighLevelNode> child(const HighLevelNode& parent, const Constraint& c) {
    HighLevelNode node;
    node.constraints = parent.constraints;
    node.constraints.push_back(c);
    node.paths = parent.paths;
    node.lower_bounds = parent.lower_bounds;
    node.cost = parent.cost;
    node.lower_bound = parent.lower_bound;
    if (!replan(node, c.agent)) return std::nullopt;
    node.conflicts = count_conflicting_pairs(node.paths, mode_);
    node.id = next_id_++;
    return node;
  }

  SolveResult finish(const HighLevelNode& node, std::size_t expansions) const {
    std::vector<std::vector<NodeId>> paths;
    for (const auto& p : node.paths) paths.push_back(*p);
    SolveResult r;
    r.status = SolveStatus::solved;
    r.plan = make_plan(std::move(paths));
    r.expansions = expansions;
    r.lower_bound = node.lower_bound;
    return r;
  }

  SolveResult failure(std::size_t expansions) const {
    SolveResult r;
    r.status = budget_hit_ ? SolveStatus::budget_exceeded : SolveStatus::unsolvable;
    r.expansions = expansions;
    return r;
  }

  ConflictMode mode() const { return mode_; }
  const SolverOptions& options() const { return options_; }
  void mark_budget() { budget_hit_ = true; }

 private:
  const Instance& instance_;
  const Graph& graph_;
  double w_;
  ConflictMode mode_;
  SolverOptions options_;
  int horizon_ = 0;
  bool unreachable_ = false;
  bool budget_hit_ = false;
  std::size_t next_id_ = 0;
};

}  // namespace

SolveResult cbs_solve(const Instance& instance, ConflictMode mode, const SolverOptions& options) {
  Search search(instance, 1.0, mode, options);
  auto root = search.root();
  if (!root) return search.failure(0);

  auto worse = [](const std::shared_ptr<HighLevelNode>& a, const std::shared_ptr<HighLevelNode>& b) {
    return std::tie(a->cost, a->conflicts, a->id) > std::tie(b->cost, b->conflicts, b->id);
  };
  std::priority_queue<std::shared_ptr<HighLevelNode>, std::vector<std::shared_ptr<HighLevelNode>>,
                      decltype(worse)>
      open(worse);
  open.push(std::make_shared<HighLevelNode>(std::move(*root)));

  std::size_t expansions = 0;
  while (!open.empty()) {
    auto node = open.top();
    open.pop();
    auto conflict = first_conflict(node->paths, mode);
    if (!conflict) return search.finish(*node, expansions);
    if (expansions >= options.max_expansions) {
      search.mark_budget();
      return search.failure(expansions);
    }
    ++expansions;
    auto [c1, c2] = split(*conflict);
    for (const Constraint& c : {c1, c2}) {
      if (auto next = search.child(*node, c)) {
        open.push(std::make_shared<HighLevelNode>(std::move(*next)));
      }
    }
  }
  return search.failure(expansions);
}

SolveResult ecbs_solve(const Instance& instance, double w, ConflictMode mode,
                       const SolverOptions& options) {
  if (!(w >= 1.0)) throw DomainError("suboptimality factor must be >= 1");
  Search search(instance, w, mode, options);
  auto root = search.root();
  if (!root) return search.failure(0);

  std::vector<std::unique_ptr<HighLevelNode>> nodes;
  std::set<std::pair<int, std::size_t>> open;                // (lower bound, id)
  std::set<std::tuple<int, int, std::size_t>> focal;         // (conflicts, cost, id)
  std::set<std::pair<int, std::size_t>> pending;             // (cost, id), open but not focal
  auto threshold = [&] { return w * open.begin()->first + 1e-9; };

  auto insert = [&](HighLevelNode&& hl) {
    std::size_t id = hl.id;
    if (nodes.size() <= id) nodes.resize(id + 1);
    nodes[id] = std::make_unique<HighLevelNode>(std::move(hl));
    const auto& n = *nodes[id];
    open.insert({n.lower_bound, id});
    if (n.cost <= threshold()) focal.insert({n.conflicts, n.cost, id});
    else pending.insert({n.cost, id});
  };
  insert(std::move(*root));

  std::size_t expansions = 0;
  while (!open.empty()) {
    double thr = threshold();
    while (!pending.empty() && pending.begin()->first <= thr) {
      std::size_t id = pending.begin()->second;
      pending.erase(pending.begin());
      focal.insert({nodes[id]->conflicts, nodes[id]->cost, id});
    }
    auto [conflicts, cost, id] = *focal.begin();
    if (cost > thr) {
      // lower bound dropped since insertion
      focal.erase(focal.begin());
      pending.insert({cost, id});
      continue;
    }
    focal.erase(focal.begin());
    auto node = std::move(nodes[id]);
    open.erase({node->lower_bound, id});

    auto conflict = first_conflict(node->paths, mode);
    if (!conflict) return search.finish(*node, expansions);
    if (expansions >= options.max_expansions) {
      search.mark_budget();
      return search.failure(expansions);
    }
    ++expansions;
    auto [c1, c2] = split(*conflict);
    for (const Constraint& c : {c1, c2}) {
      if (auto next = search.child(*node, c)) insert(std::move(*next));
    }
    if (open.empty()) break;
  }
  return search.failure(expansions);
}

PlanCheck validate_plan(const Plan& plan, const Instance& instance, ConflictMode mode) {
  PlanCheck out;
  auto structural = [&](std::string msg) {
    out.status = PlanCheck::Status::structural;
    out.message = std::move(msg);
    return out;
  };
  const Graph& g = *instance.graph;
  if (plan.paths.size() != instance.agent_count()) return structural("agent count mismatch");
  if (plan.horizon < 0) return structural("negative horizon");
  for (std::size_t i = 0; i < plan.paths.size(); ++i) {
    const auto& p = plan.paths[i];
    std::string who = "agent " + std::to_string(i);
    if (p.size() != static_cast<std::size_t>(plan.horizon) + 1) {
      return structural(who + ": path length != horizon + 1");
    }
    for (NodeId v : p) {
      if (!g.valid(v)) return structural(who + ": invalid node");
    }
    if (p.front() != instance.starts[i]) return structural(who + ": does not begin at start");
    if (p.back() != instance.goals[i]) return structural(who + ": does not end at goal");
    for (std::size_t t = 0; t + 1 < p.size(); ++t) {
      if (p[t] != p[t + 1] && !g.adjacent(p[t], p[t + 1])) {
        return structural(who + ": non-adjacent step at t=" + std::to_string(t));
      }
    }
  }

  std::vector<PathPtr> paths;
  for (const auto& p : plan.paths) paths.push_back(std::make_shared<const Path>(p));
  if (paths.empty()) return out;
  if (auto c = first_conflict(paths, mode)) {
    out.status = PlanCheck::Status::conflict;
    out.time = c->t;
    out.agent1 = c->a1;
    out.agent2 = c->a2;
    std::string kind = c->kind == Conflict::Kind::vertex ? "vertex"
                       : c->kind == Conflict::Kind::swap ? "swap"
                                                         : "following";
    out.message = kind + " conflict between agents " + std::to_string(c->a1) + " and " +
                  std::to_string(c->a2) + " at t=" + std::to_string(c->t) + " node " +
                  std::to_string(c->v);
  }
  return out;
}

std::string write_plan(const Plan& plan, const Graph& graph) {
  std::ostringstream os;
  os << "agents " << plan.paths.size() << " horizon " << plan.horizon << "\n";
  for (const auto& p : plan.paths) {
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (t > 0) os << ' ';
      if (auto c = graph.coords(p[t])) os << c->x << ',' << c->y;
      else os << p[t];
    }
    os << "\n";
  }
  return os.str();
}

Plan read_plan(std::string_view text, const Graph& graph) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("plan: empty file");
  std::istringstream header(line);
  std::string k1, k2;
  long n = -1;
  long horizon = -1;
  if (!(header >> k1 >> n >> k2 >> horizon) || k1 != "agents" || k2 != "horizon" || n < 0 ||
      horizon < 0) {
    throw ParseError("plan line 1: expected 'agents <n> horizon <T>'");
  }
  Plan plan;
  plan.horizon = static_cast<int>(horizon);
  for (long i = 0; i < n; ++i) {
    std::size_t line_no = static_cast<std::size_t>(i) + 2;
    if (!std::getline(in, line)) throw ParseError("plan: missing line " + std::to_string(line_no));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream row(line);
    std::string token;
    std::vector<NodeId> path;
    while (row >> token) {
      auto comma = token.find(',');
      try {
        if (comma == std::string::npos) {
          NodeId v = std::stoi(token);
          if (!graph.valid(v)) throw std::out_of_range("node");
          path.push_back(v);
        } else {
          Cell c{std::stoi(token.substr(0, comma)), std::stoi(token.substr(comma + 1))};
          auto v = graph.node_at(c);
          if (!v) throw std::out_of_range("cell");
          path.push_back(*v);
        }
      } catch (const std::exception&) {
        throw ParseError("plan line " + std::to_string(line_no) + ": bad node '" + token + "'");
      }
    }
    if (path.size() != static_cast<std::size_t>(horizon) + 1) {
      throw ParseError("plan line " + std::to_string(line_no) + ": expected " +
                       std::to_string(horizon + 1) + " nodes");
    }
    plan.paths.push_back(std::move(path));
  }
  return plan;
}

}  // namespace tisim
