#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tisim/model.hpp"
#include "tisim/planners.hpp"

namespace tisim {

struct ExploreOptions {
  std::size_t max_configs = 2'000'000;
  PlannerOptions planner;
};

struct ExploreReport {
  bool complete = true;
  std::size_t configs = 0;
  std::size_t transitions = 0;

  // (a) states from which no activation sequence reaches weak termination
  std::size_t states_without_witness = 0;
  // (b) a request cycle that survives some fair infinite path
  std::optional<std::vector<AgentId>> persistent_cycle;
  // (c) states failing the structural checks
  std::size_t forest_violations = 0;
  std::size_t invariant_violations = 0;
  std::vector<Violation> first_violation;

  bool reachability_ok() const { return states_without_witness == 0; }
  bool deadlock_persists() const { return persistent_cycle.has_value(); }
  bool clean() const {
    return complete && reachability_ok() && !deadlock_persists() && invariant_violations == 0;
  }
};

// Breadth-first enumeration of every configuration reachable through single
// agent activations from the initial configuration (agent 0 highest priority).
// Extended agents may complete at any point, which abstracts away delays.
ExploreReport exhaustive_explore(const Instance& instance, PlannerKind planner,
                                 const ExploreOptions& options = {});

std::string format_report(const ExploreReport& report);

}  // namespace tisim
