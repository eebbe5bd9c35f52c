#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tisim/types.hpp"

namespace tisim {

struct GridShape {
  int width = 0;
  int height = 0;
  bool operator==(const GridShape&) const = default;
};

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

// Undirected, unweighted environment graph. Immutable after construction;
// shortest-path tables are filled lazily and are safe to populate from
// several threads.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
        std::string name = {});
  Graph(const Graph& other);
  Graph& operator=(const Graph& other);
  Graph(Graph&&) noexcept;
  Graph& operator=(Graph&&) noexcept;
  ~Graph();

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  std::size_t max_degree() const;
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool valid(NodeId v) const { return v >= 0 && static_cast<std::size_t>(v) < node_count(); }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  bool adjacent(NodeId u, NodeId v) const;

  // Grid metadata, present for graphs loaded from map files.
  const std::optional<GridShape>& grid_shape() const { return grid_shape_; }
  std::optional<Cell> coords(NodeId v) const;
  std::optional<NodeId> node_at(Cell c) const;

  // Exact hop count, kUnreachable when disconnected.
  std::int32_t distance(NodeId u, NodeId v) const { return distances_to(v)[u]; }
  // Full table of hop counts towards `target`, computed once and cached.
  std::span<const std::int32_t> distances_to(NodeId target) const;

 private:
  friend Graph make_grid_graph(int width, int height, const std::vector<bool>& passable,
                               std::string name);

  void reset_cache();

  std::vector<std::vector<NodeId>> adjacency_;
  std::string name_;
  std::optional<GridShape> grid_shape_;
  std::vector<Cell> node_coords_;
  std::vector<NodeId> cell_to_node_;  // row-major over all cells, kNoNode when blocked

  using Table = std::vector<std::int32_t>;
  mutable std::unique_ptr<std::atomic<const Table*>[]> tables_;
  mutable std::vector<std::unique_ptr<Table>> owned_tables_;
  mutable std::mutex cache_mutex_;
};

struct Instance {
  std::shared_ptr<const Graph> graph;
  std::vector<NodeId> starts;
  std::vector<NodeId> goals;

  std::size_t agent_count() const { return starts.size(); }
};

// 4-connected grid over passable cells; ids assigned row-major.
Graph make_grid_graph(int width, int height, const std::vector<bool>& passable,
                      std::string name = {});
Graph make_open_grid(int width, int height);
Graph make_path_graph(std::size_t n);
Graph make_cycle_graph(std::size_t n);

// MovingAI `.map` text.
Graph load_map(std::string_view text, std::string name = {});
// Reads a map file; the graph is named after the file stem.
Graph load_map_file(const std::string& path);

// MovingAI `.scen` text; takes the first n rows.
Instance load_scenario(std::string_view text, std::shared_ptr<const Graph> graph, std::size_t n);
Instance load_scenario_file(const std::string& path, std::shared_ptr<const Graph> graph,
                            std::size_t n);

// Throws std::invalid_argument when starts or goals are not distinct or invalid.
void validate_instance(const Instance& instance);

bool is_biconnected(const Graph& graph);

std::string read_text_file(const std::string& path);

}  // namespace tisim
