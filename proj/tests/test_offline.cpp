#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tisim/offline.hpp"

using namespace tisim;

namespace {

Instance path3(std::vector<NodeId> starts, std::vector<NodeId> goals) {
  return test::make_instance(make_path_graph(3), std::move(starts), std::move(goals));
}

}  // namespace

TEST_CASE("path cost is the earliest time of the final rest") {
  CHECK(path_cost({4}) == 0);
  CHECK(path_cost({0, 1, 1, 1}) == 1);
  CHECK(path_cost({0, 1, 0, 1}) == 3);
  CHECK(path_cost({1, 1, 2, 2}) == 2);
  Plan p = make_plan({{0, 1, 2}, {5}});
  CHECK(p.horizon == 2);
  CHECK(p.paths[1] == std::vector<NodeId>{5, 5, 5});
  CHECK(soc(p) == 2);
  CHECK(makespan(p) == 2);
}

TEST_CASE("plan validation") {
  auto inst = path3({0, 2}, {1, 2});
  CHECK(validate_plan(make_plan({{0, 1}, {2, 2}}), inst, ConflictMode::following_semantics).ok());

  auto vertex = validate_plan(make_plan({{0, 1}, {2, 1, 2}}), inst, ConflictMode::swap_semantics);
  CHECK(vertex.status == PlanCheck::Status::conflict);
  CHECK(vertex.time == 1);
  CHECK(vertex.message == "vertex conflict between agents 0 and 1 at t=1 node 1");

  // a1 enters node 1 as a0 leaves it: fine under swap, a following conflict otherwise
  auto follow = path3({1, 2}, {0, 1});
  Plan chase = make_plan({{1, 0}, {2, 1}});
  CHECK(validate_plan(chase, follow, ConflictMode::swap_semantics).ok());
  auto f = validate_plan(chase, follow, ConflictMode::following_semantics);
  CHECK(f.status == PlanCheck::Status::conflict);
  CHECK(f.message.rfind("following conflict", 0) == 0);

  auto swap_inst = path3({0, 1}, {1, 0});
  auto s = validate_plan(make_plan({{0, 1}, {1, 0}}), swap_inst, ConflictMode::swap_semantics);
  CHECK(s.status == PlanCheck::Status::conflict);
  CHECK(s.message.rfind("swap conflict", 0) == 0);

  auto bad = [&](Plan p) { return validate_plan(p, inst, ConflictMode::swap_semantics).status; };
  CHECK(bad(make_plan({{0, 1}})) == PlanCheck::Status::structural);
  CHECK(bad(make_plan({{1, 1}, {2, 2}})) == PlanCheck::Status::structural);
  CHECK(bad(make_plan({{0, 0}, {2, 2}})) == PlanCheck::Status::structural);
  CHECK(bad(make_plan({{0, 2, 1}, {2, 2, 2}})) == PlanCheck::Status::structural);
  CHECK(bad(Plan{{{0, 1}, {2}}, 1}) == PlanCheck::Status::structural);
}

TEST_CASE("padding with goal stays changes neither cost nor validity") {
  auto inst = test::load_fixture("benchmark-b", 6);
  auto r = cbs_solve(inst, ConflictMode::following_semantics);
  REQUIRE(r.plan);
  Plan padded = *r.plan;
  for (auto& p : padded.paths) p.insert(p.end(), 3, p.back());
  padded.horizon += 3;
  CHECK(soc(padded) == soc(*r.plan));
  CHECK(makespan(padded) == makespan(*r.plan));
  CHECK(validate_plan(padded, inst, ConflictMode::following_semantics).ok());
}

TEST_CASE("CBS matches a joint-space search on small instances") {
  auto grid = std::make_shared<const Graph>(make_open_grid(3, 3));
  auto ring = std::make_shared<const Graph>(make_cycle_graph(5));
  std::mt19937_64 rng(3);
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto g = trial % 2 ? grid : ring;
    auto inst = test::random_instance(g, 2 + trial % 2, rng);
    for (auto mode : {ConflictMode::swap_semantics, ConflictMode::following_semantics}) {
      auto expect = test::joint_optimal_soc(inst, mode);
      auto r = cbs_solve(inst, mode);
      if (!expect) {
        CHECK(r.status != SolveStatus::solved);
        continue;
      }
      REQUIRE(r.plan);
      CHECK(soc(*r.plan) == *expect);
      CHECK(test::plan_conflict_free(*r.plan, mode));
      CHECK(validate_plan(*r.plan, inst, mode).ok());
      ++solved;
    }
  }
  CHECK(solved > 40);
}

TEST_CASE("optimal cost never drops when semantics tighten or agents are added") {
  auto g = std::make_shared<const Graph>(make_open_grid(3, 3));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = test::random_instance(g, 3, rng);
    auto swap = cbs_solve(inst, ConflictMode::swap_semantics);
    auto follow = cbs_solve(inst, ConflictMode::following_semantics);
    if (swap.plan && follow.plan) CHECK(soc(*swap.plan) <= soc(*follow.plan));
    Instance fewer{g, {inst.starts[0], inst.starts[1]}, {inst.goals[0], inst.goals[1]}};
    auto smaller = cbs_solve(fewer, ConflictMode::following_semantics);
    if (follow.plan) {
      REQUIRE(smaller.plan);
      CHECK(soc(*smaller.plan) <= soc(*follow.plan));
    }
  }
}

TEST_CASE("unsolvable instances are reported as such") {
  auto p2 = test::load_fixture("p2", 2);
  CHECK(cbs_solve(p2, ConflictMode::swap_semantics).status == SolveStatus::unsolvable);
  CHECK(cbs_solve(p2, ConflictMode::following_semantics).status == SolveStatus::unsolvable);

  // four agents rotating around a 4-cycle: legal only when following is allowed
  auto g = std::make_shared<const Graph>(make_cycle_graph(4));
  Instance rotate{g, {0, 1, 2, 3}, {1, 2, 3, 0}};
  auto swap = cbs_solve(rotate, ConflictMode::swap_semantics);
  REQUIRE(swap.plan);
  CHECK(soc(*swap.plan) == 4);
  CHECK(cbs_solve(rotate, ConflictMode::following_semantics).status != SolveStatus::solved);
}

TEST_CASE("the expansion budget is honored") {
  auto inst = test::load_fixture("benchmark-a", 8);
  SolverOptions tight;
  tight.max_expansions = 1;
  auto r = cbs_solve(inst, ConflictMode::following_semantics, tight);
  if (!r.plan) CHECK(r.status == SolveStatus::budget_exceeded);
  CHECK(r.expansions <= 1);
}

TEST_CASE("ECBS stays within its suboptimality bound") {
  auto grid = std::make_shared<const Graph>(make_open_grid(3, 3));
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = test::random_instance(grid, 3, rng);
    auto opt = test::joint_optimal_soc(inst, ConflictMode::following_semantics);
    for (double w : {1.0, 1.1, 1.5}) {
      auto r = ecbs_solve(inst, w, ConflictMode::following_semantics);
      if (!opt) {
        CHECK(r.status != SolveStatus::solved);
        continue;
      }
      REQUIRE(r.plan);
      CHECK(validate_plan(*r.plan, inst, ConflictMode::following_semantics).ok());
      CHECK(soc(*r.plan) >= *opt);
      CHECK(soc(*r.plan) <= w * *opt + 1e-9);
    }
  }
  CHECK_THROWS_AS(ecbs_solve(test::load_fixture("p2", 1), 0.9, ConflictMode::swap_semantics),
                  DomainError);
}

TEST_CASE("ECBS on the larger map returns a conflict-free plan") {
  auto inst = test::load_fixture("random-32-32-10", 20);
  auto r = ecbs_solve(inst, 1.1, ConflictMode::following_semantics);
  REQUIRE(r.plan);
  CHECK(test::plan_conflict_free(*r.plan, ConflictMode::following_semantics));
  CHECK(soc(*r.plan) >= r.lower_bound);
  CHECK(soc(*r.plan) <= 1.1 * r.lower_bound + 1e-9);
}

TEST_CASE("plan files round-trip") {
  auto inst = test::load_fixture("benchmark-b", 6);
  auto r = cbs_solve(inst, ConflictMode::following_semantics);
  REQUIRE(r.plan);
  std::string text = write_plan(*r.plan, *inst.graph);
  CHECK(text.rfind("agents 6 horizon ", 0) == 0);
  CHECK(read_plan(text, *inst.graph) == *r.plan);

  Graph ring = make_cycle_graph(4);
  Plan numeric = make_plan({{0, 1, 2}, {3}});
  CHECK(write_plan(numeric, ring) == "agents 2 horizon 2\n0 1 2\n3 3 3\n");
  CHECK(read_plan(write_plan(numeric, ring), ring) == numeric);

  CHECK_THROWS_AS(read_plan("", ring), ParseError);
  CHECK_THROWS_AS(read_plan("agents 1 horizon 1\n0\n", ring), ParseError);
  CHECK_THROWS_AS(read_plan("agents 1 horizon 0\n9\n", ring), ParseError);
  CHECK_THROWS_AS(read_plan("agents 2 horizon 0\n0\n", ring), ParseError);
}

TEST_CASE("conflict mode names") {
  CHECK(parse_conflict_mode("swap") == ConflictMode::swap_semantics);
  CHECK(parse_conflict_mode("following") == ConflictMode::following_semantics);
  CHECK_FALSE(parse_conflict_mode("vertex"));
}
