#include "tisim/explorer.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace tisim {
namespace {

// Renumbers priority epochs so that only their relative order remains; two
// configurations differing only in how many goal drops happened collapse.
void canonicalize(Configuration& config) {
  std::vector<std::int64_t> epochs;
  for (const auto& a : config.agents()) {
    if (a.pori.epoch < 0) epochs.push_back(a.pori.epoch);
    if (a.ptmp.epoch < 0) epochs.push_back(a.ptmp.epoch);
  }
  std::sort(epochs.begin(), epochs.end());
  epochs.erase(std::unique(epochs.begin(), epochs.end()), epochs.end());
  const auto m = static_cast<std::int64_t>(epochs.size());
  auto remap = [&](std::int64_t e) {
    if (e >= 0) return e;
    auto rank = std::lower_bound(epochs.begin(), epochs.end(), e) - epochs.begin();
    return -m + static_cast<std::int64_t>(rank);
  };
  for (std::size_t i = 0; i < config.size(); ++i) {
    auto& a = config.agent_mut(static_cast<AgentId>(i));
    a.pori.epoch = remap(a.pori.epoch);
    a.ptmp.epoch = remap(a.ptmp.epoch);
  }
  config.set_goal_drops(m);
}

void put(std::string& out, std::int64_t v) {
  char buf[sizeof v];
  std::memcpy(buf, &v, sizeof v);
  out.append(buf, sizeof v);
}

template <typename Set>
void put_set(std::string& out, const Set& s) {
  put(out, static_cast<std::int64_t>(s.size()));
  for (auto v : s) put(out, v);
}

std::string encode(const Configuration& config, const std::vector<bool>& flags) {
  std::string key;
  for (const auto& a : config.agents()) {
    put(key, static_cast<std::int64_t>(a.mode));
    put(key, a.tail);
    put(key, a.head);
    put(key, a.parent);
    put_set(key, a.children);
    put_set(key, a.candidates);
    put_set(key, a.searched);
    put(key, a.pori.epoch);
    put(key, a.ptmp.epoch);
    std::int64_t bits = 0;
    std::memcpy(&bits, &a.ptmp.tiebreak, sizeof bits);
    put(key, bits);
    put(key, a.hint ? static_cast<std::int64_t>(a.hint->clock) : -1);
  }
  for (bool f : flags) key.push_back(f ? '1' : '0');
  return key;
}

std::string cycle_signature(const Configuration& config, const std::vector<AgentId>& cycle) {
  std::string sig;
  for (AgentId i : cycle) {
    put(sig, i);
    put(sig, config[i].tail);
    put(sig, config[i].head);
  }
  return sig;
}

struct Edge {
  std::uint32_t to;
  AgentId agent;
};

// Iterative Tarjan over the states in `members`, following only edges that
// stay inside. Calls visit(component) for every strongly connected component.
template <typename Visit>
void strongly_connected(const std::vector<std::vector<Edge>>& edges,
                        const std::vector<std::uint32_t>& members,
                        const std::vector<char>& inside, Visit visit) {
  std::unordered_map<std::uint32_t, int> index;
  std::unordered_map<std::uint32_t, int> low;
  std::vector<std::uint32_t> stack;
  std::unordered_map<std::uint32_t, bool> on_stack;
  int counter = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  for (std::uint32_t root : members) {
    if (index.count(root)) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& out = edges[f.v];
      if (f.next < out.size()) {
        std::uint32_t w = out[f.next++].to;
        if (!inside[w]) continue;
        if (!index.count(w)) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::uint32_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::uint32_t> comp;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        visit(comp);
      }
    }
  }
}

}  // namespace

ExploreReport exhaustive_explore(const Instance& instance, PlannerKind planner,
                                 const ExploreOptions& options) {
  validate_instance(instance);
  const std::size_t n = instance.agent_count();
  ExploreReport report;

  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::vector<Edge>> edges;
  std::vector<char> all_flags;
  std::vector<std::vector<std::uint32_t>> cycles_of;  // per state: cycle signature ids
  std::map<std::string, std::uint32_t> signature_ids;
  std::vector<std::vector<AgentId>> signature_agents;
  std::deque<std::pair<Configuration, std::vector<bool>>> frontier;

  auto intern = [&](Configuration&& config, std::vector<bool>&& flags) -> std::uint32_t {
    canonicalize(config);
    std::string key = encode(config, flags);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    auto id = static_cast<std::uint32_t>(edges.size());
    ids.emplace(std::move(key), id);
    edges.emplace_back();
    all_flags.push_back(weak_termination(flags));
    std::vector<std::uint32_t> sigs;
    for (const auto& cycle : find_request_cycles(config)) {
      auto [sit, fresh] = signature_ids.emplace(cycle_signature(config, cycle),
                                                static_cast<std::uint32_t>(signature_agents.size()));
      if (fresh) signature_agents.push_back(cycle);
      sigs.push_back(sit->second);
    }
    cycles_of.push_back(std::move(sigs));
    auto violations = check_config_invariants(config);
    if (!violations.empty()) {
      ++report.invariant_violations;
      if (report.first_violation.empty()) report.first_violation = violations;
      for (const auto& v : violations) {
        if (v.kind == "H not a forest") {
          ++report.forest_violations;
          break;
        }
      }
    }
    frontier.emplace_back(std::move(config), std::move(flags));
    return id;
  };

  {
    Configuration init = make_initial_configuration(instance, index_tiebreaks(n));
    std::vector<bool> flags(n, false);
    update_goal_flags(init, flags);
    intern(std::move(init), std::move(flags));
  }

  std::uint32_t current = 0;
  while (!frontier.empty()) {
    if (edges.size() > options.max_configs) {
      report.complete = false;
      break;
    }
    auto [config, flags] = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      Configuration next = config;
      std::vector<bool> next_flags = flags;
      activate(next, static_cast<AgentId>(i), planner, options.planner);
      update_goal_flags(next, next_flags);
      std::uint32_t to = intern(std::move(next), std::move(next_flags));
      edges[current].push_back({to, static_cast<AgentId>(i)});
      ++report.transitions;
    }
    ++current;
  }
  report.configs = edges.size();
  if (!report.complete) return report;

  // (a) backwards search from every state where all agents have been home
  std::vector<std::vector<std::uint32_t>> reverse(edges.size());
  for (std::uint32_t v = 0; v < edges.size(); ++v) {
    for (const auto& e : edges[v]) reverse[e.to].push_back(v);
  }
  std::vector<char> witness(edges.size(), 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t v = 0; v < edges.size(); ++v) {
    if (all_flags[v]) {
      witness[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto u : reverse[v]) {
      if (!witness[u]) {
        witness[u] = 1;
        queue.push_back(u);
      }
    }
  }
  report.states_without_witness =
      static_cast<std::size_t>(std::count(witness.begin(), witness.end(), 0));

  // (b) a cycle persists fairly iff some SCC of the states holding it has
  // transitions by every agent
  std::vector<std::vector<std::uint32_t>> holders(signature_agents.size());
  for (std::uint32_t v = 0; v < edges.size(); ++v) {
    for (auto s : cycles_of[v]) holders[s].push_back(v);
  }
  std::vector<char> inside(edges.size(), 0);
  std::vector<std::uint32_t> comp_stamp(edges.size(), 0);
  std::uint32_t stamp = 0;
  for (std::size_t s = 0; s < holders.size() && !report.persistent_cycle; ++s) {
    for (auto v : holders[s]) inside[v] = 1;
    strongly_connected(edges, holders[s], inside, [&](const std::vector<std::uint32_t>& comp) {
      if (report.persistent_cycle) return;
      ++stamp;
      for (auto v : comp) comp_stamp[v] = stamp;
      std::vector<char> seen(n, 0);
      for (auto v : comp) {
        for (const auto& e : edges[v]) {
          if (comp_stamp[e.to] == stamp) seen[e.agent] = 1;
        }
      }
      if (std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; })) {
        report.persistent_cycle = signature_agents[s];
      }
    });
    for (auto v : holders[s]) inside[v] = 0;
  }
  return report;
}

std::string format_report(const ExploreReport& r) {
  std::ostringstream os;
  os << "status: " << (r.complete ? "complete" : "incomplete") << "\n";
  os << "configurations: " << r.configs << "\n";
  os << "transitions: " << r.transitions << "\n";
  if (!r.complete) return os.str();
  os << "reachability: "
     << (r.reachability_ok() ? "ok" : std::to_string(r.states_without_witness) + " states without witness")
     << "\n";
  os << "deadlock persistence: ";
  if (r.persistent_cycle) {
    os << "cycle";
    for (AgentId a : *r.persistent_cycle) os << ' ' << a;
    os << "\n";
  } else {
    os << "none\n";
  }
  os << "forest violations: " << r.forest_violations << "\n";
  os << "invariant violations: " << r.invariant_violations << "\n";
  if (!r.first_violation.empty()) os << format_violations(r.first_violation);
  return os.str();
}

}  // namespace tisim
