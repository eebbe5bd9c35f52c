#pragma once

#include <deque>
#include <vector>

#include "tisim/offline.hpp"
#include "tisim/simulator.hpp"

namespace tisim {

struct Visit {
  AgentId agent = kNoAgent;
  int time = 0;  // plan timestep of arrival

  bool operator==(const Visit&) const = default;
};

// Per-node visit order of a plan; an agent resting on a node over consecutive
// steps is one visit.
struct DependencyTable {
  std::vector<std::deque<Visit>> queues;  // indexed by node

  bool operator==(const DependencyTable&) const = default;
};

// Throws std::invalid_argument when the plan has no paths or a path leaves the graph.
DependencyTable mcp_build(const Plan& plan, const Graph& graph);

struct PolicyOptions {
  std::size_t timestep_bound = 0;  // 0 selects 10 * T * n (at least 100)
};

struct PolicyReport {
  Metrics metrics;
  ExecutionTrace trace;
};

// Fully synchronized: plan step s + 1 starts once every agent finished step s.
PolicyReport fsp_run(const Plan& plan, const Instance& instance, const DelayModel& delays, Rng& rng,
                     const PolicyOptions& options = {});

// Follows the plan step by step, entering a node only when first in its queue.
PolicyReport mcp_run(const Plan& plan, const Instance& instance, const DelayModel& delays, Rng& rng,
                     const PolicyOptions& options = {});

// Sequence of agents entering each node over a trace, collapsing stays.
std::vector<std::vector<AgentId>> node_visit_order(const ExecutionTrace& trace,
                                                   std::size_t node_count);

}  // namespace tisim
