#include "tisim/policies.hpp"

#include <algorithm>
#include <stdexcept>

namespace tisim {

DependencyTable mcp_build(const Plan& plan, const Graph& graph) {
  if (plan.paths.empty()) throw std::invalid_argument("plan has no agents");
  DependencyTable table;
  table.queues.resize(graph.node_count());
  std::vector<std::vector<std::pair<int, AgentId>>> per_node(graph.node_count());
  for (std::size_t i = 0; i < plan.paths.size(); ++i) {
    const auto& p = plan.paths[i];
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (!graph.valid(p[t])) throw std::invalid_argument("plan leaves the graph");
      if (t > 0 && p[t] == p[t - 1]) continue;
      per_node[p[t]].push_back({static_cast<int>(t), static_cast<AgentId>(i)});
    }
  }
  for (std::size_t v = 0; v < per_node.size(); ++v) {
    auto& list = per_node[v];
    std::sort(list.begin(), list.end());
    for (auto [t, a] : list) table.queues[v].push_back({a, t});
  }
  return table;
}

namespace {

std::size_t default_bound(const Plan& plan, const PolicyOptions& options) {
  if (options.timestep_bound > 0) return options.timestep_bound;
  return std::max<std::size_t>(100, 10 * static_cast<std::size_t>(plan.horizon) * plan.paths.size());
}

void check_inputs(const Plan& plan, const Instance& instance, const DelayModel& delays) {
  if (plan.paths.size() != instance.agent_count()) {
    throw std::invalid_argument("plan does not match the instance");
  }
  if (delays.p.size() != instance.agent_count()) {
    throw std::invalid_argument("delay model does not match agent count");
  }
}

struct Recorder {
  ExecutionTrace trace;
  std::vector<NodeId> goals;

  void record(const std::vector<NodeId>& pos, std::size_t activations, int t) {
    std::vector<AgentSnapshot> snap;
    snap.reserve(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
      snap.push_back({Mode::contracted, pos[i], kNoNode});
      if (pos[i] == goals[i] && !trace.goal_first_visit[i]) trace.goal_first_visit[i] = t;
    }
    trace.timesteps.push_back(std::move(snap));
    trace.activations.push_back(activations);
  }

  PolicyReport finish(bool success, std::size_t activations, double p_bar) {
    trace.activations_total = activations;
    bool weak = std::all_of(trace.goal_first_visit.begin(), trace.goal_first_visit.end(),
                            [](const auto& v) { return v.has_value(); });
    trace.terminated = success ? Termination::strong
                       : weak  ? Termination::weak_only
                               : Termination::failed;
    PolicyReport r;
    r.metrics = compute_metrics(trace, goals);
    r.metrics.p_bar = p_bar;
    r.trace = std::move(trace);
    return r;
  }
};

}  // namespace

PolicyReport fsp_run(const Plan& plan, const Instance& instance, const DelayModel& delays, Rng& rng,
                     const PolicyOptions& options) {
  check_inputs(plan, instance, delays);
  const std::size_t n = plan.paths.size();
  const std::size_t bound = default_bound(plan, options);
  int last_step = 0;
  for (const auto& p : plan.paths) last_step = std::max(last_step, path_cost(p));

  Recorder rec;
  rec.goals = instance.goals;
  rec.trace.goal_first_visit.assign(n, std::nullopt);
  std::vector<NodeId> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = plan.paths[i][0];
  rec.record(pos, 0, 0);

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<bool> done(n, false);
  std::size_t attempts = 0;
  int step = 0;
  int t = 0;
  while (step < last_step) {
    if (static_cast<std::size_t>(t) >= bound) return rec.finish(false, attempts, delays.p_bar);
    ++t;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      NodeId next = plan.paths[i][step + 1];
      if (next == plan.paths[i][step]) {
        done[i] = true;
        continue;
      }
      ++attempts;
      if (u(rng) >= delays.p[i]) {
        pos[i] = next;
        done[i] = true;
      }
    }
    rec.record(pos, attempts, t);
    if (std::all_of(done.begin(), done.end(), [](bool b) { return b; })) {
      ++step;
      std::fill(done.begin(), done.end(), false);
    }
  }
  return rec.finish(true, attempts, delays.p_bar);
}

PolicyReport mcp_run(const Plan& plan, const Instance& instance, const DelayModel& delays, Rng& rng,
                     const PolicyOptions& options) {
  check_inputs(plan, instance, delays);
  const std::size_t n = plan.paths.size();
  const std::size_t bound = default_bound(plan, options);
  DependencyTable table = mcp_build(plan, *instance.graph);

  std::vector<int> cost(n);
  for (std::size_t i = 0; i < n; ++i) cost[i] = path_cost(plan.paths[i]);

  Recorder rec;
  rec.goals = instance.goals;
  rec.trace.goal_first_visit.assign(n, std::nullopt);
  std::vector<NodeId> pos(n);
  std::vector<int> k(n, 0);  // plan step each agent has reached
  for (std::size_t i = 0; i < n; ++i) pos[i] = plan.paths[i][0];
  rec.record(pos, 0, 0);

  auto finished = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (k[i] < cost[i]) return false;
    }
    return true;
  };

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t attempts = 0;
  int t = 0;
  std::vector<AgentId> movers;
  while (!finished()) {
    if (static_cast<std::size_t>(t) >= bound) return rec.finish(false, attempts, delays.p_bar);
    ++t;
    // Eligibility is judged on the queues as they stood at the start of the timestep.
    movers.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (k[i] >= cost[i]) continue;
      NodeId here = plan.paths[i][k[i]];
      NodeId next = plan.paths[i][k[i] + 1];
      if (next == here) {
        ++k[i];
        continue;
      }
      const auto& q = table.queues[next];
      if (q.empty() || q.front() != Visit{static_cast<AgentId>(i), k[i] + 1}) continue;
      ++attempts;
      if (u(rng) >= delays.p[i]) movers.push_back(static_cast<AgentId>(i));
    }
    for (AgentId i : movers) {
      NodeId here = pos[i];
      ++k[i];
      pos[i] = plan.paths[i][k[i]];
      auto& q = table.queues[here];
      if (q.empty() || q.front().agent != i) throw std::logic_error("queue out of order");
      q.pop_front();
    }
    rec.record(pos, attempts, t);
  }
  return rec.finish(true, attempts, delays.p_bar);
}

std::vector<std::vector<AgentId>> node_visit_order(const ExecutionTrace& trace,
                                                   std::size_t node_count) {
  std::vector<std::vector<AgentId>> order(node_count);
  for (std::size_t t = 0; t < trace.timesteps.size(); ++t) {
    const auto& snap = trace.timesteps[t];
    for (std::size_t i = 0; i < snap.size(); ++i) {
      if (t > 0 && trace.timesteps[t - 1][i].tail == snap[i].tail) continue;
      order[snap[i].tail].push_back(static_cast<AgentId>(i));
    }
  }
  return order;
}

}  // namespace tisim
