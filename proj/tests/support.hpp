#pragma once

// Fixtures and independent oracles shared by the unit tests and the
// acceptance suite.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "tisim/graph.hpp"
#include "tisim/offline.hpp"

#ifndef TISIM_DATA_DIR
#error "TISIM_DATA_DIR must point at the data directory"
#endif

namespace tisim::test {

inline std::string data_path(const std::string& name) { return std::string(TISIM_DATA_DIR) + "/" + name; }

inline Instance load_fixture(const std::string& stem, std::size_t n) {
  auto graph = std::make_shared<const Graph>(load_map_file(data_path(stem + ".map")));
  return load_scenario_file(data_path(stem + ".scen"), graph, n);
}

inline Instance make_instance(Graph g, std::vector<NodeId> starts, std::vector<NodeId> goals) {
  return Instance{std::make_shared<const Graph>(std::move(g)), std::move(starts), std::move(goals)};
}

// Plain BFS hop counts from source over an adjacency callback.
inline std::vector<int> bfs_oracle(const Graph& g, NodeId source) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeId> q{source};
  dist[source] = 0;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    for (NodeId u = 0; u < static_cast<NodeId>(g.node_count()); ++u) {
      if (dist[u] < 0 && g.adjacent(v, u)) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
  }
  return dist;
}

// Biconnectivity by deleting each node in turn and checking connectivity.
inline bool biconnected_oracle(const Graph& g) {
  const auto n = static_cast<NodeId>(g.node_count());
  auto connected_without = [&](NodeId removed) {
    NodeId start = removed == 0 ? 1 : 0;
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{start};
    seen[start] = true;
    int count = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId u : g.neighbors(v)) {
        if (u != removed && !seen[u]) {
          seen[u] = true;
          ++count;
          stack.push_back(u);
        }
      }
    }
    return count == n - (removed >= 0 ? 1 : 0);
  };
  if (!connected_without(-1)) return false;
  for (NodeId v = 0; v < n; ++v) {
    if (!connected_without(v)) return false;
  }
  return true;
}

// Optimal SOC by Dijkstra over joint configurations (positions plus the set of
// agents that have settled for good at their goals). Tiny instances only.
inline std::optional<int> joint_optimal_soc(const Instance& inst, ConflictMode mode) {
  const Graph& g = *inst.graph;
  const std::size_t n = inst.agent_count();
  const std::size_t all = (std::size_t{1} << n) - 1;
  using State = std::pair<std::vector<NodeId>, std::size_t>;
  std::map<State, int> best;
  using Item = std::pair<int, State>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  State init{inst.starts, 0};
  best[init] = 0;
  pq.push({0, init});

  std::vector<std::vector<NodeId>> options(n);
  while (!pq.empty()) {
    auto [cost, state] = pq.top();
    pq.pop();
    if (best[state] < cost) continue;
    const auto& pos = state.first;
    for (std::size_t settled = 0; settled <= all; ++settled) {
      if ((settled & state.second) != state.second) continue;
      bool legal = true;
      for (std::size_t i = 0; i < n; ++i) {
        if ((settled >> i & 1) && pos[i] != inst.goals[i]) legal = false;
      }
      if (!legal) continue;
      if (settled == all) return cost;
      for (std::size_t i = 0; i < n; ++i) {
        options[i].clear();
        options[i].push_back(pos[i]);
        if (!(settled >> i & 1)) {
          for (NodeId u : g.neighbors(pos[i])) options[i].push_back(u);
        }
      }
      const int step = static_cast<int>(n) - __builtin_popcountll(settled);
      std::vector<NodeId> next(n);
      std::function<void(std::size_t)> choose = [&](std::size_t i) {
        if (i == n) {
          for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
              if (a == b) continue;
              if (next[a] == next[b]) return;
              if (mode == ConflictMode::following_semantics && next[a] == pos[b]) return;
              if (mode == ConflictMode::swap_semantics && next[a] == pos[b] && next[b] == pos[a]) {
                return;
              }
            }
          }
          State s{next, settled};
          int c = cost + step;
          auto it = best.find(s);
          if (it == best.end() || c < it->second) {
            best[s] = c;
            pq.push({c, s});
          }
          return;
        }
        for (NodeId v : options[i]) {
          next[i] = v;
          choose(i + 1);
        }
      };
      choose(0);
    }
  }
  return std::nullopt;
}

// Independent conflict scan over a padded plan.
inline bool plan_conflict_free(const Plan& plan, ConflictMode mode) {
  const std::size_t n = plan.paths.size();
  for (int t = 0; t <= plan.horizon; ++t) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        if (plan.paths[a][t] == plan.paths[b][t]) return false;
        if (t == plan.horizon) continue;
        NodeId a0 = plan.paths[a][t], a1 = plan.paths[a][t + 1];
        NodeId b0 = plan.paths[b][t], b1 = plan.paths[b][t + 1];
        if (mode == ConflictMode::following_semantics && a1 == b0) return false;
        if (mode == ConflictMode::swap_semantics && a1 == b0 && b1 == a0) return false;
      }
    }
  }
  return true;
}

// Every k-agent instance (ordered distinct starts, ordered distinct goals) on g.
inline std::vector<Instance> all_instances(const std::shared_ptr<const Graph>& g, std::size_t k) {
  std::vector<Instance> out;
  const auto n = static_cast<NodeId>(g->node_count());
  std::vector<std::vector<NodeId>> tuples;
  std::vector<NodeId> cur;
  std::function<void()> rec = [&] {
    if (cur.size() == k) {
      tuples.push_back(cur);
      return;
    }
    for (NodeId v = 0; v < n; ++v) {
      if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
      cur.push_back(v);
      rec();
      cur.pop_back();
    }
  };
  rec();
  for (const auto& s : tuples) {
    for (const auto& t : tuples) out.push_back(Instance{g, s, t});
  }
  return out;
}

// Random k-agent instance with distinct starts and distinct goals.
inline Instance random_instance(const std::shared_ptr<const Graph>& g, std::size_t k, std::mt19937_64& rng) {
  std::vector<NodeId> nodes(g->node_count());
  for (std::size_t v = 0; v < nodes.size(); ++v) nodes[v] = static_cast<NodeId>(v);
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::vector<NodeId> starts(nodes.begin(), nodes.begin() + k);
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::vector<NodeId> goals(nodes.begin(), nodes.begin() + k);
  return Instance{g, starts, goals};
}

}  // namespace tisim::test
