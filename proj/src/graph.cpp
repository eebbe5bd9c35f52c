#include "tisim/graph.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace tisim {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  // a trailing newline produces one empty tail entry
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

ParseError map_error(std::size_t line, const std::string& what) {
  return ParseError("map line " + std::to_string(line) + ": " + what);
}

int parse_positive(std::string_view token, std::size_t line) {
  int value = 0;
  try {
    std::size_t used = 0;
    value = std::stoi(std::string(token), &used);
    if (used != token.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw map_error(line, "expected integer, got '" + std::string(token) + "'");
  }
  if (value <= 0) throw map_error(line, "dimension must be positive");
  return value;
}

}  // namespace

Graph::Graph(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
             std::string name)
    : adjacency_(node_count), name_(std::move(name)) {
  for (auto [u, v] : edges) {
    if (!valid(u) || !valid(v)) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  reset_cache();
}

Graph::Graph(const Graph& other)
    : adjacency_(other.adjacency_),
      name_(other.name_),
      grid_shape_(other.grid_shape_),
      node_coords_(other.node_coords_),
      cell_to_node_(other.cell_to_node_) {
  reset_cache();
}

Graph& Graph::operator=(const Graph& other) {
  if (this != &other) {
    adjacency_ = other.adjacency_;
    name_ = other.name_;
    grid_shape_ = other.grid_shape_;
    node_coords_ = other.node_coords_;
    cell_to_node_ = other.cell_to_node_;
    reset_cache();
  }
  return *this;
}

Graph::Graph(Graph&& other) noexcept
    : adjacency_(std::move(other.adjacency_)),
      name_(std::move(other.name_)),
      grid_shape_(std::move(other.grid_shape_)),
      node_coords_(std::move(other.node_coords_)),
      cell_to_node_(std::move(other.cell_to_node_)),
      tables_(std::move(other.tables_)),
      owned_tables_(std::move(other.owned_tables_)) {}

Graph& Graph::operator=(Graph&& other) noexcept {
  if (this != &other) {
    adjacency_ = std::move(other.adjacency_);
    name_ = std::move(other.name_);
    grid_shape_ = std::move(other.grid_shape_);
    node_coords_ = std::move(other.node_coords_);
    cell_to_node_ = std::move(other.cell_to_node_);
    tables_ = std::move(other.tables_);
    owned_tables_ = std::move(other.owned_tables_);
  }
  return *this;
}

Graph::~Graph() = default;

void Graph::reset_cache() {
  owned_tables_.clear();
  tables_ = std::make_unique<std::atomic<const Table*>[]>(adjacency_.size());
  for (std::size_t i = 0; i < adjacency_.size(); ++i) tables_[i].store(nullptr);
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, adj.size());
  return best;
}

bool Graph::adjacent(NodeId u, NodeId v) const {
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::optional<Cell> Graph::coords(NodeId v) const {
  if (!grid_shape_ || !valid(v)) return std::nullopt;
  return node_coords_[v];
}

std::optional<NodeId> Graph::node_at(Cell c) const {
  if (!grid_shape_) return std::nullopt;
  if (c.x < 0 || c.y < 0 || c.x >= grid_shape_->width || c.y >= grid_shape_->height) {
    return std::nullopt;
  }
  NodeId v = cell_to_node_[static_cast<std::size_t>(c.y) * grid_shape_->width + c.x];
  if (v == kNoNode) return std::nullopt;
  return v;
}

std::span<const std::int32_t> Graph::distances_to(NodeId target) const {
  if (const Table* t = tables_[target].load(std::memory_order_acquire)) return *t;

  std::lock_guard lock(cache_mutex_);
  if (const Table* t = tables_[target].load(std::memory_order_relaxed)) return *t;

  auto table = std::make_unique<Table>(node_count(), kUnreachable);
  std::queue<NodeId> open;
  (*table)[target] = 0;
  open.push(target);
  while (!open.empty()) {
    NodeId v = open.front();
    open.pop();
    for (NodeId u : adjacency_[v]) {
      if ((*table)[u] != kUnreachable) continue;
      (*table)[u] = (*table)[v] + 1;
      open.push(u);
    }
  }
  const Table* raw = table.get();
  owned_tables_.push_back(std::move(table));
  tables_[target].store(raw, std::memory_order_release);
  return *raw;
}

Graph make_grid_graph(int width, int height, const std::vector<bool>& passable, std::string name) {
  if (passable.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("passable mask does not match grid size");
  }
  std::vector<NodeId> cell_to_node(passable.size(), kNoNode);
  std::vector<Cell> coords;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::size_t idx = static_cast<std::size_t>(y) * width + x;
      if (!passable[idx]) continue;
      cell_to_node[idx] = static_cast<NodeId>(coords.size());
      coords.push_back({x, y});
    }
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const Cell& c : coords) {
    NodeId v = cell_to_node[static_cast<std::size_t>(c.y) * width + c.x];
    if (c.x + 1 < width) {
      NodeId r = cell_to_node[static_cast<std::size_t>(c.y) * width + c.x + 1];
      if (r != kNoNode) edges.emplace_back(v, r);
    }
    if (c.y + 1 < height) {
      NodeId d = cell_to_node[static_cast<std::size_t>(c.y + 1) * width + c.x];
      if (d != kNoNode) edges.emplace_back(v, d);
    }
  }
  Graph g(coords.size(), edges, std::move(name));
  g.grid_shape_ = GridShape{width, height};
  g.node_coords_ = std::move(coords);
  g.cell_to_node_ = std::move(cell_to_node);
  return g;
}

Graph make_open_grid(int width, int height) {
  return make_grid_graph(width, height,
                         std::vector<bool>(static_cast<std::size_t>(width) * height, true),
                         "open-" + std::to_string(width) + "x" + std::to_string(height));
}

Graph make_path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  }
  return Graph(n, edges, "P" + std::to_string(n));
}

Graph make_cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  }
  return Graph(n, edges, "C" + std::to_string(n));
}

Graph load_map(std::string_view text, std::string name) {
  auto lines = split_lines(text);
  std::size_t cursor = 0;
  auto next_header = [&](std::size_t line_no) -> std::pair<std::string, std::string> {
    if (cursor >= lines.size()) throw map_error(line_no, "unexpected end of header");
    auto line = trim(lines[cursor++]);
    auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) return {std::string(line), {}};
    return {std::string(line.substr(0, space)), std::string(trim(line.substr(space + 1)))};
  };

  auto [type_key, type_value] = next_header(1);
  if (type_key != "type") throw map_error(1, "expected 'type octile'");
  if (type_value != "octile") throw map_error(1, "unsupported map type '" + type_value + "'");

  int height = 0;
  int width = 0;
  for (std::size_t line_no = 2; line_no <= 3; ++line_no) {
    auto [key, value] = next_header(line_no);
    if (key == "height" && height == 0) {
      height = parse_positive(value, line_no);
    } else if (key == "width" && width == 0) {
      width = parse_positive(value, line_no);
    } else {
      throw map_error(line_no, "expected 'height H' and 'width W', got '" + key + "'");
    }
  }
  if (cursor >= lines.size() || trim(lines[cursor]) != "map") {
    throw map_error(4, "expected 'map'");
  }
  ++cursor;

  std::vector<bool> passable(static_cast<std::size_t>(width) * height, false);
  for (int y = 0; y < height; ++y) {
    std::size_t line_no = cursor + 1;
    if (cursor >= lines.size()) throw map_error(line_no, "missing grid row " + std::to_string(y));
    auto row = lines[cursor++];
    if (row.size() != static_cast<std::size_t>(width)) {
      throw map_error(line_no, "row length " + std::to_string(row.size()) + " != width " +
                                   std::to_string(width));
    }
    for (int x = 0; x < width; ++x) {
      char c = row[x];
      bool open;
      if (c == '.' || c == 'G') {
        open = true;
      } else if (c == '@' || c == 'T' || c == 'O') {
        open = false;
      } else {
        throw map_error(line_no, std::string("unknown cell character '") + c + "'");
      }
      passable[static_cast<std::size_t>(y) * width + x] = open;
    }
  }
  for (; cursor < lines.size(); ++cursor) {
    if (!trim(lines[cursor]).empty()) throw map_error(cursor + 1, "extra content after grid");
  }
  return make_grid_graph(width, height, passable, std::move(name));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph load_map_file(const std::string& path) {
  return load_map(read_text_file(path), std::filesystem::path(path).stem().string());
}

Instance load_scenario(std::string_view text, std::shared_ptr<const Graph> graph, std::size_t n) {
  if (!graph) throw LoadError("scenario: no graph");
  auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]).substr(0, 7) != "version") {
    throw LoadError("scenario line 1: expected 'version' header");
  }

  Instance inst;
  inst.graph = graph;
  std::size_t line_no = 1;
  for (std::size_t k = 1; k < lines.size() && inst.starts.size() < n; ++k) {
    line_no = k + 1;
    auto line = lines[k];
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      auto tab = line.find('\t', pos);
      fields.emplace_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    if (fields.size() < 8) {
      throw LoadError("scenario line " + std::to_string(line_no) + ": expected at least 8 fields");
    }
    int coords[4];
    try {
      for (int f = 0; f < 4; ++f) coords[f] = std::stoi(fields[4 + f]);
    } catch (const std::exception&) {
      throw LoadError("scenario line " + std::to_string(line_no) + ": bad coordinate");
    }
    auto start = graph->node_at({coords[0], coords[1]});
    auto goal = graph->node_at({coords[2], coords[3]});
    if (!start) {
      throw LoadError("scenario line " + std::to_string(line_no) + ": start cell (" +
                      fields[4] + "," + fields[5] + ") is blocked or outside the map");
    }
    if (!goal) {
      throw LoadError("scenario line " + std::to_string(line_no) + ": goal cell (" + fields[6] +
                      "," + fields[7] + ") is blocked or outside the map");
    }
    if (std::find(inst.starts.begin(), inst.starts.end(), *start) != inst.starts.end()) {
      throw LoadError("scenario line " + std::to_string(line_no) + ": duplicate start");
    }
    if (std::find(inst.goals.begin(), inst.goals.end(), *goal) != inst.goals.end()) {
      throw LoadError("scenario line " + std::to_string(line_no) + ": duplicate goal");
    }
    inst.starts.push_back(*start);
    inst.goals.push_back(*goal);
  }
  if (inst.starts.size() < n) {
    throw LoadError("scenario has " + std::to_string(inst.starts.size()) + " rows, " +
                    std::to_string(n) + " agents requested");
  }
  return inst;
}

Instance load_scenario_file(const std::string& path, std::shared_ptr<const Graph> graph,
                            std::size_t n) {
  return load_scenario(read_text_file(path), std::move(graph), n);
}

void validate_instance(const Instance& instance) {
  if (!instance.graph) throw std::invalid_argument("instance without graph");
  if (instance.starts.size() != instance.goals.size()) {
    throw std::invalid_argument("starts and goals differ in length");
  }
  auto check_distinct = [&](const std::vector<NodeId>& nodes, const char* what) {
    std::vector<NodeId> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument(std::string(what) + " are not distinct");
    }
    for (NodeId v : nodes) {
      if (!instance.graph->valid(v)) throw std::invalid_argument(std::string(what) + " out of range");
    }
  };
  check_distinct(instance.starts, "starts");
  check_distinct(instance.goals, "goals");
}

bool is_biconnected(const Graph& graph) {
  const std::size_t n = graph.node_count();
  if (n < 3) throw DomainError("is_biconnected needs at least 3 nodes");

  // Iterative lowlink DFS from node 0.
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  std::vector<NodeId> parent(n, kNoNode);
  std::vector<std::size_t> edge_cursor(n, 0);
  std::vector<NodeId> stack{0};
  int timer = 0;
  int root_children = 0;
  disc[0] = low[0] = timer++;

  while (!stack.empty()) {
    NodeId v = stack.back();
    auto adj = graph.neighbors(v);
    if (edge_cursor[v] < adj.size()) {
      NodeId u = adj[edge_cursor[v]++];
      if (disc[u] == -1) {
        parent[u] = v;
        disc[u] = low[u] = timer++;
        if (v == 0) ++root_children;
        stack.push_back(u);
      } else if (u != parent[v]) {
        low[v] = std::min(low[v], disc[u]);
      }
      continue;
    }
    stack.pop_back();
    NodeId p = parent[v];
    if (p == kNoNode) continue;
    low[p] = std::min(low[p], low[v]);
    if (p != 0 && low[v] >= disc[p]) return false;  // p is an articulation point
  }
  if (timer != static_cast<int>(n)) return false;  // disconnected
  return root_children <= 1;
}

}  // namespace tisim
