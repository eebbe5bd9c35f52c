#include <doctest.h>

#include "support.hpp"
#include "tisim/model.hpp"

using namespace tisim;

namespace {

// Star around v3 as in the two-agent execution example: v1 - v3 - v5, v2 - v3 - v4.
Instance star_instance() {
  Graph g(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}}, "star");
  return test::make_instance(std::move(g), {0, 1}, {4, 3});
}

Configuration initial(const Instance& inst) {
  return make_initial_configuration(inst, index_tiebreaks(inst.agent_count()));
}

}  // namespace

TEST_CASE("initial configuration") {
  auto inst = star_instance();
  auto c = initial(inst);
  CHECK(c.size() == 2);
  CHECK(c[0].mode == Mode::contracted);
  CHECK(c[0].head == kNoNode);
  CHECK(c[0].parent == 0);
  CHECK(c[0].candidates == NodeSet{0, 2});
  CHECK(c[0].searched.empty());
  CHECK(c[0].pori > c[1].pori);
  CHECK(c[0].ptmp == c[0].pori);
  CHECK(check_config_invariants(c).empty());
  CHECK_THROWS_AS(make_initial_configuration(inst, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(make_initial_configuration(inst, {0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("agents starting on their goal rank below everyone still travelling") {
  auto g = std::make_shared<const Graph>(make_path_graph(4));
  auto c = initial(Instance{g, {0, 1, 2}, {3, 1, 2}});
  CHECK(c[0].pori.epoch == 0);
  CHECK(c[1].pori.epoch == -1);
  CHECK(c[2].pori.epoch == -2);
  CHECK(c[1].ptmp == c[1].pori);
  CHECK(c.goal_drops() == 2);
  CHECK(check_config_invariants(c).empty());
}

TEST_CASE("transitions follow the mode diagram") {
  auto inst = star_instance();
  auto c = initial(inst);
  CHECK_THROWS_AS(c.apply(0, Transition::extend()), IllegalTransition);
  CHECK_THROWS_AS(c.apply(0, Transition::finish()), IllegalTransition);
  CHECK_THROWS_AS(c.apply(0, Transition::request(4)), IllegalTransition);  // not adjacent
  CHECK_THROWS_AS(c.apply(0, Transition::revert()), IllegalTransition);

  c.apply(0, Transition::request(2));
  CHECK(c[0].mode == Mode::requesting);
  CHECK_FALSE(c.occupied(2));  // a request is not an occupation
  c.apply(1, Transition::request(2));
  c.apply(0, Transition::extend());
  CHECK(c.occupied(2));
  CHECK(c.extended_head_owner(2) == 0);
  CHECK_THROWS_AS(c.apply(1, Transition::extend()), IllegalTransition);
  c.apply(1, Transition::revert());
  CHECK(c[1].mode == Mode::contracted);
  c.apply(0, Transition::finish());
  CHECK(c[0].tail == 2);
  CHECK(c.tail_owner(2) == 0);
  CHECK_FALSE(c.occupied(0));
  CHECK(c.index_consistent());
}

TEST_CASE("apply_transition leaves its input untouched") {
  auto inst = star_instance();
  auto c = initial(inst);
  auto d = apply_transition(c, 0, Transition::request(2));
  CHECK(c[0].mode == Mode::contracted);
  CHECK(d[0].mode == Mode::requesting);
}

TEST_CASE("request cycles") {
  auto g = std::make_shared<const Graph>(make_cycle_graph(4));
  Instance inst{g, {0, 1, 2}, {1, 2, 3}};
  auto c = initial(inst);
  CHECK_FALSE(detect_request_cycle(c));
  c.apply(0, Transition::request(1));
  c.apply(1, Transition::request(0));
  auto cycle = detect_request_cycle(c);
  REQUIRE(cycle);
  CHECK(*cycle == std::vector<AgentId>{0, 1});
  c.apply(2, Transition::request(1));  // joins the chain but not the cycle
  CHECK(find_request_cycles(c).size() == 1);

  auto d = initial(Instance{std::make_shared<const Graph>(make_cycle_graph(3)), {0, 1, 2}, {1, 2, 0}});
  d.apply(2, Transition::request(0));
  d.apply(0, Transition::request(1));
  d.apply(1, Transition::request(2));
  CHECK(*detect_request_cycle(d) == std::vector<AgentId>{0, 1, 2});
}

TEST_CASE("termination predicates") {
  auto g = std::make_shared<const Graph>(make_path_graph(3));
  auto c = initial(Instance{g, {0, 2}, {0, 1}});
  CHECK_FALSE(strong_termination(c));
  std::vector<bool> flags(2, false);
  CHECK(update_goal_flags(c, flags));
  CHECK(flags == std::vector<bool>{true, false});
  CHECK_FALSE(weak_termination(flags));
  c.apply(1, Transition::request(1));
  c.apply(1, Transition::extend());
  CHECK_FALSE(update_goal_flags(c, flags));  // extended toward the goal is not at the goal
  c.apply(1, Transition::finish());
  CHECK(update_goal_flags(c, flags));
  CHECK(weak_termination(flags));
  CHECK(strong_termination(c));
}

TEST_CASE("goal epochs decrease strictly") {
  auto c = initial(star_instance());
  auto a = c.next_goal_epoch();
  auto b = c.next_goal_epoch();
  CHECK(a < 0);
  CHECK(b < a);
  CHECK(c.goal_drops() == 2);
}

TEST_CASE("invariant checks catch injected faults") {
  auto inst = star_instance();
  auto kinds = [](const std::vector<Violation>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.kind);
    return out;
  };
  auto has = [&](const std::vector<Violation>& v, const std::string& kind) {
    auto k = kinds(v);
    return std::find(k.begin(), k.end(), kind) != k.end();
  };

  SUBCASE("parent cycle") {
    auto c = initial(inst);
    c.agent_mut(0).parent = 1;
    c.agent_mut(1).parent = 0;
    c.agent_mut(0).children = AgentSet{1};
    c.agent_mut(1).children = AgentSet{0};
    CHECK(has(check_config_invariants(c), "H not a forest"));
  }
  SUBCASE("one-sided parent link") {
    auto c = initial(inst);
    c.agent_mut(1).parent = 0;
    CHECK(has(check_config_invariants(c), "parent/children asymmetry"));
  }
  SUBCASE("temporal priority below original") {
    auto c = initial(inst);
    c.agent_mut(0).ptmp = Priority{-3, 0.1};
    CHECK(has(check_config_invariants(c), "ptmp below pori"));
  }
  SUBCASE("equal original priorities") {
    auto c = initial(inst);
    c.agent_mut(1).pori = c[0].pori;
    c.agent_mut(1).ptmp = c[0].pori;
    CHECK(has(check_config_invariants(c), "pori not unique"));
  }
  SUBCASE("candidate outside the neighborhood") {
    auto c = initial(inst);
    c.agent_mut(0).candidates.insert(4);
    CHECK(has(check_config_invariants(c), "candidate outside neighborhood"));
  }
  SUBCASE("candidates and searched nodes overlap away from the tail") {
    auto c = initial(inst);
    c.agent_mut(0).searched.insert(2);
    CHECK(has(check_config_invariants(c), "C and S overlap"));
    auto d = initial(inst);
    d.agent_mut(0).searched.insert(0);  // the tail itself may be in both
    CHECK(check_config_invariants(d).empty());
  }
  SUBCASE("shared tail") {
    Configuration c(inst.graph, initial(inst).agents());
    c.agent_mut(1).tail = 0;
    c.rebuild_index();
    CHECK(has(check_config_invariants(c), "duplicate tail"));
  }
  SUBCASE("tree priorities") {
    auto c = initial(inst);
    c.agent_mut(1).parent = 0;
    c.agent_mut(0).children = AgentSet{1};
    CHECK_FALSE(check_tree_priorities(c).empty());
    c.agent_mut(1).ptmp = c[0].ptmp;
    CHECK(check_tree_priorities(c).empty());
    CHECK(check_config_invariants(c).empty());
  }
}

TEST_CASE("activation lines") {
  auto c = initial(star_instance());
  CHECK(format_activation_line(0, "none", c[0]) == "0 none 0 - contracted");
  c.apply(0, Transition::request(2));
  CHECK(format_activation_line(0, "request", c[0]) == "0 request 0 2 requesting");
}

TEST_CASE("mode names round-trip") {
  for (Mode m : {Mode::contracted, Mode::requesting, Mode::extended}) {
    CHECK(parse_mode(to_string(m)) == m);
  }
  CHECK_FALSE(parse_mode("moving"));
}
