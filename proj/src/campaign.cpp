#include "tisim/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <thread>

namespace tisim {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::greedy: return "greedy";
    case Algorithm::causal_pibt: return "causal_pibt";
    case Algorithm::causal_pibt_plus: return "causal_pibt_plus";
    case Algorithm::fsp: return "fsp";
    case Algorithm::mcp: return "mcp";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (auto a : {Algorithm::greedy, Algorithm::causal_pibt, Algorithm::causal_pibt_plus,
                 Algorithm::fsp, Algorithm::mcp}) {
    if (text == to_string(a)) return a;
  }
  return std::nullopt;
}

bool needs_plan(Algorithm a) {
  return a == Algorithm::causal_pibt_plus || a == Algorithm::fsp || a == Algorithm::mcp;
}

std::optional<SolverSpec> parse_solver(std::string_view text) {
  SolverSpec spec;
  if (text == "cbs") return spec;
  if (text == "ecbs") {
    spec.kind = SolverSpec::Kind::ecbs;
    return spec;
  }
  if (text.substr(0, 5) == "ecbs:") {
    spec.kind = SolverSpec::Kind::ecbs;
    std::string w(text.substr(5));
    char* end = nullptr;
    spec.w = std::strtod(w.c_str(), &end);
    if (w.empty() || *end != '\0' || !(spec.w >= 1.0)) return std::nullopt;
    return spec;
  }
  return std::nullopt;
}

SolveResult solve(const Instance& instance, const SolverSpec& spec) {
  if (spec.kind == SolverSpec::Kind::cbs) return cbs_solve(instance, spec.mode, spec.options);
  return ecbs_solve(instance, spec.w, spec.mode, spec.options);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_p_bar(double p_bar) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p_bar);
  return buf;
}

namespace {

std::string cell_descriptor(const RunSpec& spec, std::size_t agents) {
  return spec.map_name + "|" + spec.scen_name + "|" + std::to_string(agents) + "|" +
         format_p_bar(spec.p_bar) + "|" + std::to_string(spec.seed);
}

}  // namespace

std::uint64_t delay_stream_seed(const RunSpec& spec, std::size_t agents) {
  return fnv1a("delay|" + cell_descriptor(spec, agents));
}

std::uint64_t execution_stream_seed(const RunSpec& spec, std::size_t agents) {
  return fnv1a("exec|" + std::string(to_string(spec.algorithm)) + "|" + cell_descriptor(spec, agents));
}

RunOutcome execute_run(const Instance& instance, const RunSpec& spec, const Plan* plan) {
  RunOutcome out;
  const std::size_t n = instance.agent_count();
  out.metrics.seed = spec.seed;
  out.metrics.p_bar = spec.p_bar;
  try {
    if (needs_plan(spec.algorithm) && !plan) throw std::invalid_argument("no plan available");
    Rng delay_rng(delay_stream_seed(spec, n));
    DelayModel delays = sample_delays(n, spec.p_bar, delay_rng);
    Rng rng(execution_stream_seed(spec, n));
    switch (spec.algorithm) {
      case Algorithm::fsp: {
        auto r = fsp_run(*plan, instance, delays, rng);
        out.metrics = r.metrics;
        out.trace = std::move(r.trace);
        break;
      }
      case Algorithm::mcp: {
        auto r = mcp_run(*plan, instance, delays, rng);
        out.metrics = r.metrics;
        out.trace = std::move(r.trace);
        break;
      }
      default: {
        PlannerKind kind = spec.algorithm == Algorithm::greedy        ? PlannerKind::greedy
                           : spec.algorithm == Algorithm::causal_pibt ? PlannerKind::causal_pibt
                                                                      : PlannerKind::causal_pibt_plus;
        RunOptions options;
        options.activation_bound = spec.activation_bound;
        options.check_invariants = spec.check_invariants;
        options.planner.greedy_faithful = spec.greedy_faithful;
        auto r = run_time_independent(instance, kind, delays, rng, options,
                                      kind == PlannerKind::causal_pibt_plus ? &plan->paths : nullptr);
        out.metrics = r.metrics;
        out.trace = std::move(r.trace);
        if (!r.violations.empty()) out.error = r.diagnostic;
        break;
      }
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.metrics.seed = spec.seed;
  out.metrics.p_bar = spec.p_bar;
  return out;
}

std::string csv_row(const RunSpec& spec, std::size_t agents, const Metrics& m) {
  std::ostringstream os;
  os << spec.map_name << ',' << spec.scen_name << ',' << agents << ',' << to_string(spec.algorithm)
     << ',' << format_p_bar(spec.p_bar) << ',' << spec.seed << ',' << (m.success ? "true" : "false")
     << ',';
  if (m.success && m.soc) os << *m.soc;
  os << ',';
  if (m.success && m.makespan) os << *m.makespan;
  os << ',' << m.activations;
  return os.str();
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    auto item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key, std::size_t line) {
  try {
    std::size_t used = 0;
    T v{};
    if constexpr (std::is_floating_point_v<T>) {
      v = static_cast<T>(std::stod(text, &used));
    } else {
      if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
      v = static_cast<T>(std::stoull(text, &used));
    }
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("config line " + std::to_string(line) + ": bad value '" + text + "' for " + key);
  }
}

std::string resolve(const std::string& path, const std::string& base) {
  if (path.empty() || base.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base) / path).string();
}

}  // namespace

CampaignConfig parse_campaign_config(std::string_view text, const std::string& base_dir) {
  CampaignConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::string solver_text = "cbs";
  std::string mode_text = "following";
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "map") {
      c.map = value;
    } else if (key == "scen") {
      c.scen = value;
    } else if (key == "agents") {
      c.agents.clear();
      for (const auto& v : split_list(value)) c.agents.push_back(parse_number<std::size_t>(v, key, line_no));
    } else if (key == "p_bar") {
      c.p_bars.clear();
      for (const auto& v : split_list(value)) {
        double p = parse_number<double>(v, key, line_no);
        if (!(p >= 0.0 && p <= 1.0)) {
          throw ParseError("config line " + std::to_string(line_no) + ": p_bar outside [0, 1]");
        }
        c.p_bars.push_back(p);
      }
    } else if (key == "algorithms") {
      c.algorithms.clear();
      for (const auto& v : split_list(value)) {
        auto a = parse_algorithm(v);
        if (!a) throw ParseError("config line " + std::to_string(line_no) + ": unknown algorithm '" + v + "'");
        c.algorithms.push_back(*a);
      }
    } else if (key == "repetitions") {
      c.repetitions = parse_number<std::size_t>(value, key, line_no);
    } else if (key == "seed_base") {
      c.seed_base = parse_number<std::uint64_t>(value, key, line_no);
    } else if (key == "activation_bound") {
      c.activation_bound = parse_number<std::size_t>(value, key, line_no);
    } else if (key == "output") {
      c.output = value;
    } else if (key == "solver") {
      solver_text = value;
    } else if (key == "mode") {
      mode_text = value;
    } else if (key == "workers") {
      c.workers = parse_number<std::size_t>(value, key, line_no);
    } else {
      throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  auto solver = parse_solver(solver_text);
  if (!solver) throw ParseError("config: unknown solver '" + solver_text + "'");
  auto mode = parse_conflict_mode(mode_text);
  if (!mode) throw ParseError("config: unknown conflict mode '" + mode_text + "'");
  c.solver = *solver;
  c.solver.mode = *mode;
  if (c.map.empty() || c.scen.empty()) throw ParseError("config: map and scen are required");
  if (c.agents.empty()) throw ParseError("config: agents list is empty");
  if (c.p_bars.empty()) throw ParseError("config: p_bar list is empty");
  if (c.algorithms.empty()) throw ParseError("config: algorithms list is empty");
  if (c.repetitions < 1) throw ParseError("config: repetitions must be at least 1");
  c.map = resolve(c.map, base_dir);
  c.scen = resolve(c.scen, base_dir);
  c.output = resolve(c.output, base_dir);
  return c;
}

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TISIM_WORKERS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CampaignRow> run_campaign(const CampaignConfig& config) {
  auto graph = std::make_shared<const Graph>(load_map_file(config.map));
  const std::string map_name = std::filesystem::path(config.map).stem().string();
  const std::string scen_name = std::filesystem::path(config.scen).stem().string();
  const std::string scen_text = read_text_file(config.scen);
  const bool want_plan = std::any_of(config.algorithms.begin(), config.algorithms.end(), needs_plan);

  struct Cell {
    std::shared_ptr<const Instance> instance;
    std::shared_ptr<const Plan> plan;
    std::string error;
  };
  std::vector<Cell> cells;
  std::vector<CampaignRow> rows;
  std::vector<std::size_t> cell_of_row;
  for (std::size_t agents : config.agents) {
    Cell cell;
    try {
      cell.instance = std::make_shared<const Instance>(load_scenario(scen_text, graph, agents));
      if (want_plan) {
        auto result = solve(*cell.instance, config.solver);
        if (result.plan) cell.plan = std::make_shared<const Plan>(std::move(*result.plan));
        else cell.error = "offline solver: " + std::string(to_string(result.status));
      }
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    cells.push_back(cell);
    for (Algorithm a : config.algorithms) {
      for (double p : config.p_bars) {
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
          CampaignRow row;
          row.spec.map_name = map_name;
          row.spec.scen_name = scen_name;
          row.spec.algorithm = a;
          row.spec.p_bar = p;
          row.spec.seed = config.seed_base + rep;
          row.spec.activation_bound = config.activation_bound;
          row.agents = agents;
          row.metrics.seed = row.spec.seed;
          row.metrics.p_bar = p;
          rows.push_back(row);
          cell_of_row.push_back(cells.size() - 1);
        }
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      auto& row = rows[k];
      const Cell& cell = cells[cell_of_row[k]];
      if (!cell.instance) {
        row.error = cell.error;
        continue;
      }
      if (needs_plan(row.spec.algorithm) && !cell.plan) {
        row.error = cell.error;
        continue;
      }
      auto outcome = execute_run(*cell.instance, row.spec, cell.plan.get());
      row.metrics = outcome.metrics;
      row.error = outcome.error;
    }
  };
  const std::size_t workers = std::min(worker_count(config.workers), std::max<std::size_t>(1, rows.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

std::string campaign_csv(const std::vector<CampaignRow>& rows) {
  std::string out(kCsvHeader);
  out += "\n";
  for (const auto& r : rows) {
    out += csv_row(r.spec, r.agents, r.metrics);
    out += "\n";
  }
  return out;
}

namespace {

double quantile(const std::vector<int>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  double pos = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string campaign_summary(const std::vector<CampaignRow>& rows) {
  using Key = std::tuple<std::size_t, int, double>;
  std::map<Key, std::vector<const CampaignRow*>> groups;
  std::vector<Key> order;
  for (const auto& r : rows) {
    Key k{r.agents, static_cast<int>(r.spec.algorithm), r.spec.p_bar};
    if (!groups.count(k)) order.push_back(k);
    groups[k].push_back(&r);
  }
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-7s %-17s %-6s %5s %8s %9s %8s %8s %8s %7s\n", "agents",
                "algorithm", "p_bar", "runs", "success", "soc_mean", "soc_q1", "soc_med",
                "soc_q3", "errors");
  os << buf;
  for (const auto& k : order) {
    const auto& g = groups[k];
    std::vector<int> socs;
    std::size_t errors = 0;
    for (const auto* r : g) {
      if (r->metrics.success && r->metrics.soc) socs.push_back(*r->metrics.soc);
      if (!r->error.empty()) ++errors;
    }
    std::sort(socs.begin(), socs.end());
    double mean = socs.empty() ? 0.0
                               : std::accumulate(socs.begin(), socs.end(), 0.0) /
                                     static_cast<double>(socs.size());
    std::snprintf(buf, sizeof buf, "%-7zu %-17s %-6s %5zu %8zu %9.2f %8.1f %8.1f %8.1f %7zu\n",
                  std::get<0>(k), std::string(to_string(static_cast<Algorithm>(std::get<1>(k)))).c_str(),
                  format_p_bar(std::get<2>(k)).c_str(), g.size(), socs.size(), mean,
                  quantile(socs, 0.25), quantile(socs, 0.5), quantile(socs, 0.75), errors);
    os << buf;
  }
  return os.str();
}

}  // namespace tisim
