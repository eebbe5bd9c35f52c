#include <doctest.h>

#include <random>
#include <thread>

#include "support.hpp"
#include "tisim/graph.hpp"

using namespace tisim;

namespace {

const char* kSmallMap =
    "type octile\n"
    "height 3\n"
    "width 4\n"
    "map\n"
    "..@.\n"
    ".T..\n"
    "....\n";

}  // namespace

TEST_CASE("map parsing assigns row-major ids to passable cells") {
  Graph g = load_map(kSmallMap, "small");
  CHECK(g.node_count() == 10);
  REQUIRE(g.grid_shape());
  CHECK(g.grid_shape()->width == 4);
  CHECK(g.grid_shape()->height == 3);
  CHECK(g.node_at({0, 0}) == 0);
  CHECK(g.node_at({1, 0}) == 1);
  CHECK_FALSE(g.node_at({2, 0}));
  CHECK(g.node_at({3, 0}) == 2);
  CHECK_FALSE(g.node_at({1, 1}));
  CHECK(g.node_at({3, 2}) == 9);
  CHECK(g.coords(9)->x == 3);
  CHECK_FALSE(g.adjacent(*g.node_at({1, 0}), *g.node_at({1, 2})));
  CHECK(g.adjacent(*g.node_at({0, 0}), *g.node_at({0, 1})));
  CHECK(g.max_degree() == 3);
}

TEST_CASE("map header keys may come in either order") {
  Graph g = load_map("type octile\nwidth 2\nheight 1\nmap\n..\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("malformed maps report the offending line") {
  auto message = [](const std::string& text) {
    try {
      load_map(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("type hex\nheight 1\nwidth 1\nmap\n.\n").find("line 1") != std::string::npos);
  CHECK(message("type octile\nheight 2\nwidth 2\nmap\n..\n.\n").find("line 6") != std::string::npos);
  CHECK(message("type octile\nheight 1\nwidth 2\nmap\n.x\n").find("unknown cell") != std::string::npos);
  CHECK(message("type octile\nheight 2\nwidth 1\nmap\n.\n").find("missing grid row") !=
        std::string::npos);
}

TEST_CASE("scenario rows use x = column and y = row") {
  auto g = std::make_shared<const Graph>(load_map(kSmallMap));
  std::string scen =
      "version 1\n"
      "0\tsmall.map\t4\t3\t0\t0\t3\t2\t5\n"
      "0\tsmall.map\t4\t3\t3\t0\t0\t2\t5\n";
  Instance inst = load_scenario(scen, g, 2);
  CHECK(inst.starts == std::vector<NodeId>{0, 2});
  CHECK(inst.goals == std::vector<NodeId>{9, *g->node_at({0, 2})});
  CHECK(load_scenario(scen, g, 1).agent_count() == 1);
  CHECK_THROWS_AS(load_scenario(scen, g, 3), LoadError);
}

TEST_CASE("scenario rows on blocked cells or repeated cells are rejected") {
  auto g = std::make_shared<const Graph>(load_map(kSmallMap));
  CHECK_THROWS_AS(load_scenario("version 1\n0\tm\t4\t3\t2\t0\t0\t0\t1\n", g, 1), LoadError);
  CHECK_THROWS_AS(load_scenario("version 1\n0\tm\t4\t3\t9\t0\t0\t0\t1\n", g, 1), LoadError);
  CHECK_THROWS_AS(load_scenario("version 1\n0\tm\t4\t3\t0\t0\t3\t2\t5\n0\tm\t4\t3\t0\t0\t0\t2\t5\n", g, 2),
                  LoadError);
  CHECK_THROWS_AS(load_scenario("0\tm\t4\t3\t0\t0\t3\t2\t5\n", g, 1), LoadError);
}

TEST_CASE("distances agree with a plain BFS on the random map") {
  Graph g = load_map_file(test::data_path("random-32-32-10.map"));
  CHECK(g.name() == "random-32-32-10");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(g.node_count()) - 1);
  for (int k = 0; k < 5; ++k) {
    NodeId target = pick(rng);
    auto oracle = test::bfs_oracle(g, target);
    auto table = g.distances_to(target);
    for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
      if (oracle[v] < 0) CHECK(table[v] == kUnreachable);
      else CHECK(table[v] == oracle[v]);
    }
  }
}

TEST_CASE("open grid distances are Manhattan distances") {
  Graph g = make_open_grid(3, 3);
  CHECK(g.distance(*g.node_at({0, 0}), *g.node_at({2, 2})) == 4);
  CHECK(g.distance(4, 4) == 0);
}

TEST_CASE("distance tables fill safely from several threads") {
  Graph g = make_open_grid(20, 20);
  std::vector<std::thread> pool;
  std::vector<int> sums(4, 0);
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&, w] {
      for (NodeId t = 0; t < 400; ++t) sums[w] += g.distance(0, t);
    });
  }
  for (auto& t : pool) t.join();
  CHECK(sums[0] == sums[1]);
  CHECK(sums[2] == sums[3]);
  CHECK(sums[0] == 20 * 19 * 20);
}

TEST_CASE("biconnectivity matches node-deletion brute force") {
  CHECK(is_biconnected(make_cycle_graph(8)));
  CHECK(is_biconnected(make_open_grid(6, 6)));
  CHECK_FALSE(is_biconnected(make_path_graph(4)));
  CHECK_THROWS_AS(is_biconnected(make_path_graph(2)), DomainError);
  CHECK(is_biconnected(load_map_file(test::data_path("benchmark-b.map"))));

  std::mt19937_64 rng(11);
  std::bernoulli_distribution open(0.8);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    std::vector<bool> mask(16);
    for (std::size_t c = 0; c < mask.size(); ++c) mask[c] = open(rng);
    Graph g = make_grid_graph(4, 4, mask);
    if (g.node_count() < 3) continue;
    CHECK(is_biconnected(g) == test::biconnected_oracle(g));
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("path and cycle graphs") {
  Graph p = make_path_graph(3);
  CHECK(p.edge_count() == 2);
  CHECK(p.distance(0, 2) == 2);
  Graph c = make_cycle_graph(5);
  CHECK(c.edge_count() == 5);
  CHECK(c.distance(0, 3) == 2);
  CHECK(c.max_degree() == 2);
}

TEST_CASE("instance validation") {
  auto g = std::make_shared<const Graph>(make_path_graph(3));
  CHECK_NOTHROW(validate_instance({g, {0, 1}, {1, 2}}));
  CHECK_THROWS_AS(validate_instance({g, {0, 0}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_instance({g, {0, 1}, {2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_instance({g, {0, 5}, {1, 2}}), std::invalid_argument);
}
