#include "tisim/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tisim {

DelayModel sample_delays(std::size_t n, double p_bar, Rng& rng) {
  if (!(p_bar >= 0.0 && p_bar <= 1.0)) throw DomainError("p_bar must lie in [0, 1]");
  DelayModel d;
  d.p_bar = p_bar;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  d.p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d.p.push_back(p_bar * u(rng));
  return d;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::strong: return "strong";
    case Termination::weak_only: return "weak-only";
    case Termination::failed: return "failed";
  }
  return "?";
}

std::vector<AgentSnapshot> snapshot(const Configuration& config) {
  std::vector<AgentSnapshot> out;
  out.reserve(config.size());
  for (const auto& a : config.agents()) out.push_back({a.mode, a.tail, a.head});
  return out;
}

Metrics compute_metrics(const ExecutionTrace& trace, const std::vector<NodeId>& goals) {
  Metrics m;
  m.activations = trace.activations_total;
  m.success = trace.terminated == Termination::strong;
  if (!m.success || trace.timesteps.empty()) return m;
  int total = 0;
  int worst = 0;
  const int last = static_cast<int>(trace.timesteps.size()) - 1;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    int t = last;
    while (t >= 0 && trace.timesteps[t][i].tail == goals[i]) --t;
    int cost = t + 1;
    total += cost;
    worst = std::max(worst, cost);
  }
  m.soc = total;
  m.makespan = worst;
  return m;
}

Phase2Result phase2_until_stable(Configuration& config, PlannerKind planner, Rng& rng,
                                 std::size_t cap, const PlannerOptions& options,
                                 const ActivationObserver& observer) {
  if (cap == 0) {
    cap = 50 * config.size() * std::max<std::size_t>(1, config.graph().max_degree());
  }
  Phase2Result res;
  std::vector<AgentId> order;
  while (true) {
    order.clear();
    for (const auto& a : config.agents()) {
      if (a.mode != Mode::extended) order.push_back(a.id);
    }
    std::shuffle(order.begin(), order.end(), rng);
    bool any = false;
    for (AgentId i : order) {
      if (config[i].mode == Mode::extended) continue;
      if (res.activations >= cap) return res;
      auto r = activate(config, i, planner, options);
      ++res.activations;
      if (r.changed) {
        any = true;
        ++res.changes;
      }
      if (observer) observer(config, i, r.action);
    }
    if (!any) {
      res.stable = true;
      return res;
    }
  }
}

std::size_t phase1(Configuration& config, PlannerKind planner, const DelayModel& delays, Rng& rng,
                   const PlannerOptions& options, const ActivationObserver& observer) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<AgentId> done;
  for (const auto& a : config.agents()) {
    if (a.mode != Mode::extended) continue;
    if (u(rng) >= delays.p[a.id]) done.push_back(a.id);
  }
  for (AgentId i : done) {
    auto r = activate(config, i, planner, options);
    if (observer) observer(config, i, r.action);
  }
  return done.size();
}

namespace {

struct InvariantBreach {
  std::vector<Violation> violations;
};

}  // namespace

RunReport run_time_independent(const Instance& instance, PlannerKind planner,
                               const DelayModel& delays, Rng& rng, const RunOptions& options,
                               const std::vector<std::vector<NodeId>>* hints) {
  validate_instance(instance);
  const std::size_t n = instance.agent_count();
  if (delays.p.size() != n) throw std::invalid_argument("delay model does not match agent count");

  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<double> tiebreaks(n);
  for (std::size_t i = 0; i < n; ++i) {
    tiebreaks[i] = static_cast<double>(rank[i] + 1) / static_cast<double>(n + 1);
  }
  Configuration config = make_initial_configuration(instance, tiebreaks);
  if (hints) {
    attach_hints(config, *hints);
  } else if (planner == PlannerKind::causal_pibt_plus) {
    throw std::invalid_argument("causal_pibt_plus needs a hint plan");
  }

  RunReport report;
  ExecutionTrace& trace = report.trace;
  trace.goal_first_visit.assign(n, std::nullopt);
  std::vector<bool> flags(n, false);
  std::size_t count = 0;
  int timestep = 0;

  auto note_goals = [&] {
    if (!update_goal_flags(config, flags)) return;
    for (std::size_t i = 0; i < n; ++i) {
      if (flags[i] && !trace.goal_first_visit[i]) trace.goal_first_visit[i] = timestep;
    }
    if (!report.weak_termination_activation && weak_termination(flags)) {
      report.weak_termination_activation = count;
    }
  };
  ActivationObserver observe = [&](const Configuration& c, AgentId i, ActionKind action) {
    ++count;
    note_goals();
    if (options.check_invariants) {
      auto v = check_config_invariants(c);
      if (planner != PlannerKind::greedy) {
        auto tree = check_tree_priorities(c);
        v.insert(v.end(), tree.begin(), tree.end());
      }
      if (!v.empty()) throw InvariantBreach{std::move(v)};
    }
    if (options.observer) options.observer(c, i, action);
  };

  trace.timesteps.push_back(snapshot(config));
  trace.activations.push_back(0);
  note_goals();

  auto track_cycle = [&] {
    report.final_cycle = detect_request_cycle(config);
    report.cycle_timesteps = report.final_cycle ? report.cycle_timesteps + 1 : 0;
  };

  bool aborted = false;
  try {
    auto p2 = phase2_until_stable(config, planner, rng, options.phase2_cap, options.planner, observe);
    if (!p2.stable) {
      report.diagnostic = "phase 2 did not stabilize at timestep 0";
      aborted = true;
    }
    track_cycle();
    while (!aborted && !strong_termination(config) && count <= options.activation_bound) {
      ++timestep;
      phase1(config, planner, delays, rng, options.planner, observe);
      p2 = phase2_until_stable(config, planner, rng, options.phase2_cap, options.planner, observe);
      trace.timesteps.push_back(snapshot(config));
      trace.activations.push_back(count);
      track_cycle();
      if (!p2.stable) {
        report.diagnostic = "phase 2 did not stabilize at timestep " + std::to_string(timestep);
        aborted = true;
      }
    }
  } catch (InvariantBreach& breach) {
    report.violations = std::move(breach.violations);
    report.diagnostic = "invariant violated at activation " + std::to_string(count) + ": " +
                        format_violations(report.violations);
    trace.timesteps.push_back(snapshot(config));
    trace.activations.push_back(count);
    aborted = true;
  }

  trace.activations_total = count;
  if (!aborted && strong_termination(config)) trace.terminated = Termination::strong;
  else if (weak_termination(flags)) trace.terminated = Termination::weak_only;
  else trace.terminated = Termination::failed;
  if (trace.terminated != Termination::strong && report.diagnostic.empty()) {
    report.diagnostic = "activation bound " + std::to_string(options.activation_bound) + " exceeded";
  }

  report.metrics = compute_metrics(trace, instance.goals);
  report.metrics.p_bar = delays.p_bar;
  return report;
}

std::string write_trace(const ExecutionTrace& trace) {
  std::ostringstream os;
  const std::size_t n = trace.timesteps.empty() ? 0 : trace.timesteps.front().size();
  os << "timesteps " << (trace.timesteps.empty() ? 0 : trace.timesteps.size() - 1) << " agents "
     << n << "\n";
  for (std::size_t t = 0; t < trace.timesteps.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = trace.timesteps[t][i];
      os << t << ' ' << i << ' ' << to_string(s.mode) << ' ' << s.tail << ' ';
      if (s.head == kNoNode) os << '-';
      else os << s.head;
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace tisim
