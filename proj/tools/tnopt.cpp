// Command-line front-end: instance generation, solving, baseline
// comparison, and the benchmark harness. Emits JSON result documents on
// stdout (CSV for benches).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tn/generate.hpp"
#include "tn/io.hpp"
#include "tn/knapsack.hpp"
#include "tn/oracles.hpp"
#include "tn/shortest_path.hpp"

namespace {

// Exit statuses beyond plain success/failure.
constexpr int kExitParseError = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSaturated = 4;  // solve finished but amplitudes saturated

using namespace tn;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

Mode parse_mode(const std::string& name) {
  if (name == "linear") return Mode::Linear;
  if (name == "log") return Mode::LogStabilized;
  throw CLI::ValidationError("--mode", "expected linear or log");
}

/// Median wall-clock seconds over `reps` runs of `fn` (monotone clock).
double median_seconds(int reps, const std::function<void()>& fn) {
  std::vector<double> t;
  t.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

struct BenchRow {
  std::string experiment;
  std::uint64_t seed = 0;
  std::int64_t n = 0, q = 0, c = 0, v = 0, steps = 0;
  double tau = 0.0;
  Mode mode = Mode::Linear;
  bool cached = true;
  std::string metric_name;
  double metric_value = 0.0;
  int repetitions = 1;
};

void write_csv_row(std::ostream& os, const BenchRow& r) {
  os << r.experiment << ',' << r.seed << ',' << r.n << ',' << r.q << ',' << r.c << ',' << r.v
     << ',' << r.steps << ',' << r.tau << ',' << (r.mode == Mode::Linear ? "linear" : "log")
     << ',' << (r.cached ? "true" : "false") << ',' << r.metric_name << ','
     << r.metric_value << ',' << r.repetitions << '\n';
}

PathProblem make_path_problem(std::vector<Graph> snapshots, int origin, int dest, int steps,
                              double tau) {
  PathProblem p;
  p.snapshots = std::move(snapshots);
  p.origin = origin;
  p.destination = dest;
  p.steps = steps;
  p.tau = tau;
  p.validate();
  return p;
}

int run_gen(const std::string& kind, int n, int min_count, int max_count, std::int64_t max_weight,
            double ratio, std::int64_t max_capacity, bool normalize, double tau, int vertex_count,
            double edge_prob, bool undirected, double cost_max, double cost_quantum, int snapshots,
            std::uint64_t seed, const std::string& out_path) {
  if (kind == "knapsack") {
    KnapsackGenParams p;
    p.num_classes = n;
    p.min_count = min_count;
    p.max_count = max_count;
    p.max_weight = max_weight;
    p.capacity_ratio = ratio;
    p.max_capacity = max_capacity;
    p.normalize_values = normalize;
    p.tau = tau;
    emit(out_path, serialize_instance(gen_knapsack(p, seed)));
    return 0;
  }
  if (kind == "tabulated") {
    TabulatedGenParams p;
    p.num_classes = n;
    p.max_count = max_count;
    p.max_step_weight = max_weight;
    p.capacity_ratio = ratio;
    p.max_capacity = max_capacity;
    p.tau = tau;
    emit(out_path, serialize_instance(gen_tabulated_knapsack(p, seed)));
    return 0;
  }
  if (kind == "graph" || kind == "snapshots") {
    GraphGenParams p;
    p.vertex_count = vertex_count;
    p.edge_probability = edge_prob;
    p.directed = !undirected;
    p.cost_max = cost_max;
    p.cost_quantum = cost_quantum;
    std::vector<Graph> graphs = kind == "graph"
                                    ? std::vector<Graph>{gen_graph(p, seed)}
                                    : gen_snapshots(p, snapshots, seed);
    emit(out_path, serialize_graphs(graphs));
    return 0;
  }
  std::cerr << "unknown kind: " << kind << " (knapsack|tabulated|graph|snapshots)\n";
  return 1;
}

int run_solve(const std::string& file, double tau_override, Mode mode, bool cached, int origin,
              int dest, int steps, const std::string& out_path) {
  const std::string text = read_file(file);
  Solution sol;
  double tau;
  std::string kind;
  if (looks_like_knapsack(text)) {
    KnapsackInstance inst = parse_instance(text);
    if (tau_override > 0.0) inst.tau = tau_override;
    tau = inst.tau;
    kind = "knapsack";
    sol = solve_knapsack(inst, mode, cached);
  } else {
    std::vector<Graph> graphs = parse_graphs(text);
    if (steps < 2) steps = graphs.front().vertex_count();
    tau = tau_override > 0.0 ? tau_override : 1.0;
    kind = "path";
    PathProblem p = make_path_problem(std::move(graphs), origin, dest, steps, tau);
    sol = solve_path(p, mode, cached);
  }
  emit(out_path, solution_to_json(sol, kind, mode, cached, tau));
  if (sol.numeric.saturated) {
    std::cerr << "warning: amplitudes saturated; result may be unreliable\n";
    return kExitSaturated;
  }
  return 0;
}

int run_compare(const std::string& file, const std::string& baseline, double tau_override,
                Mode mode, bool cached, int origin, int dest, int steps,
                const std::string& out_path) {
  const std::string text = read_file(file);
  if (looks_like_knapsack(text)) {
    KnapsackInstance inst = parse_instance(text);
    if (tau_override > 0.0) inst.tau = tau_override;
    const Solution tn_sol = solve_knapsack(inst, mode, cached);
    Solution base;
    const auto start = std::chrono::steady_clock::now();
    if (baseline == "greedy") {
      base = greedy_knapsack(inst);
    } else if (baseline == "dp" || baseline == "brute") {
      const DpResult dp = dp_knapsack(inst);
      base.assignment = dp.assignment;
      base.objective = dp.optimal_value;
      base.feasible = true;
    } else {
      std::cerr << "baseline " << baseline << " does not apply to knapsack instances\n";
      return 1;
    }
    base.elapsed = std::chrono::steady_clock::now() - start;
    emit(out_path, comparison_to_json(compare_knapsack(tn_sol, base), baseline));
    return 0;
  }
  std::vector<Graph> graphs = parse_graphs(text);
  if (steps < 2) steps = graphs.front().vertex_count();
  PathProblem p = make_path_problem(std::move(graphs), origin, dest, steps,
                                    tau_override > 0.0 ? tau_override : 1.0);
  const Solution tn_sol = solve_path(p, mode, cached);
  double base_cost;
  const auto start = std::chrono::steady_clock::now();
  if (baseline == "dijkstra") {
    if (p.time_dependent()) {
      std::cerr << "dijkstra baseline applies to static graphs only\n";
      return 1;
    }
    base_cost = dijkstra(p.snapshots.front(), origin, dest).distance;
  } else if (baseline == "brute") {
    base_cost = brute_force_path(p).cost;
  } else {
    std::cerr << "baseline " << baseline << " does not apply to path instances\n";
    return 1;
  }
  const std::chrono::duration<double> base_time = std::chrono::steady_clock::now() - start;
  emit(out_path, comparison_to_json(compare_path(tn_sol, base_cost, base_time), "dijkstra"));
  return 0;
}

std::vector<double> default_tau_sweep() {
  return {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0, 10000.0, 100000.0, 1000000.0};
}

int run_bench(const std::string& experiment, std::vector<double> values, int n, std::int64_t q,
              int c, int vertex_count, double tau, Mode mode, bool cached, int reps,
              std::uint64_t seed, const std::string& out_path) {
  std::ostringstream csv;
  csv << "experiment,seed,n,Q,c,V,steps,tau,mode,cached,metric_name,metric_value,repetitions\n";
  BenchRow row;
  row.experiment = experiment;
  row.seed = seed;
  row.mode = mode;
  row.cached = cached;
  row.repetitions = reps;

  if (experiment == "TauSweepKnapsack") {
    if (values.empty()) values = default_tau_sweep();
    KnapsackGenParams p;
    p.num_classes = n;
    p.min_count = c;
    p.max_count = c;
    p.normalize_values = true;
    KnapsackInstance inst = gen_knapsack(p, seed);
    const Solution greedy = greedy_knapsack(inst);
    for (double t : values) {
      inst.tau = t;
      double eps;
      try {
        eps = compare_knapsack(solve_knapsack(inst, mode, cached), greedy).relative_error;
      } catch (const NoFeasibleError&) {
        eps = std::numeric_limits<double>::quiet_NaN();
      }
      row.n = n;
      row.q = inst.capacity;
      row.c = c;
      row.tau = t;
      row.metric_name = "relative_error";
      row.metric_value = eps;
      write_csv_row(csv, row);
    }
  } else if (experiment == "TauSweepPath") {
    if (values.empty()) values = default_tau_sweep();
    GraphGenParams p;
    p.vertex_count = vertex_count;
    Graph g = gen_graph(p, seed);
    const DijkstraResult base = dijkstra(g, 0, vertex_count - 1);
    for (double t : values) {
      PathProblem prob = make_path_problem({g}, 0, vertex_count - 1, vertex_count, t);
      double eps;
      try {
        const Solution sol = solve_path(prob, mode, cached);
        eps = sol.objective / base.distance - 1.0;
      } catch (const NoFeasibleError&) {
        eps = std::numeric_limits<double>::quiet_NaN();
      }
      row.v = vertex_count;
      row.steps = vertex_count;
      row.tau = t;
      row.metric_name = "relative_error";
      row.metric_value = eps;
      write_csv_row(csv, row);
    }
  } else if (experiment == "TimeVsQ" || experiment == "TimeVsN") {
    if (values.empty())
      values = experiment == "TimeVsQ" ? std::vector<double>{1250, 2500, 5000, 10000}
                                       : std::vector<double>{250, 500, 1000, 2000};
    for (double x : values) {
      KnapsackGenParams p;
      p.num_classes = experiment == "TimeVsN" ? static_cast<int>(x) : n;
      p.max_capacity = experiment == "TimeVsQ" ? static_cast<std::int64_t>(x) : q;
      p.capacity_ratio = 0.8;
      KnapsackInstance inst = gen_knapsack(p, seed);
      inst.tau = tau;
      row.n = p.num_classes;
      row.q = inst.capacity;
      row.c = 1;
      row.tau = tau;
      row.metric_name = "elapsed_seconds";
      row.metric_value = median_seconds(reps, [&] { solve_knapsack(inst, mode, cached); });
      write_csv_row(csv, row);
    }
  } else if (experiment == "TimeVsSteps") {
    if (values.empty()) values = {8, 16, 32, 64};
    GraphGenParams p;
    p.vertex_count = vertex_count;
    Graph g = gen_graph(p, seed);
    for (double x : values) {
      PathProblem prob = make_path_problem({g}, 0, vertex_count - 1, static_cast<int>(x), tau);
      row.v = vertex_count;
      row.steps = static_cast<int>(x);
      row.tau = tau;
      row.metric_name = "elapsed_seconds";
      row.metric_value = median_seconds(reps, [&] { solve_path(prob, mode, cached); });
      write_csv_row(csv, row);
    }
  } else if (experiment == "CachedVsUncached") {
    if (values.empty()) values = {25, 50, 100, 200};
    for (double x : values) {
      KnapsackGenParams p;
      p.num_classes = static_cast<int>(x);
      p.max_capacity = q > 0 ? q : 1000;
      KnapsackInstance inst = gen_knapsack(p, seed);
      inst.tau = tau;
      row.n = p.num_classes;
      row.q = inst.capacity;
      row.c = 1;
      row.tau = tau;
      row.cached = true;
      row.metric_name = "elapsed_seconds";
      row.metric_value = median_seconds(reps, [&] { solve_knapsack(inst, mode, true); });
      write_csv_row(csv, row);
      row.cached = false;
      row.metric_value = median_seconds(reps, [&] { solve_knapsack(inst, mode, false); });
      write_csv_row(csv, row);
    }
  } else {
    std::cerr << "unknown experiment: " << experiment << "\n";
    return 1;
  }
  emit(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor-chain solver for knapsack and n-step shortest-path problems"};
  app.require_subcommand(1);

  std::string out_path, file, kind = "knapsack", mode_name = "log", baseline = "dp";
  std::string experiment = "TauSweepKnapsack";
  std::uint64_t seed = 1;
  double tau = 0.0, ratio = 0.8, edge_prob = 0.2, cost_max = 1.0, cost_quantum = 0.0;
  int n = 10, min_count = 1, max_count = 1, vertex_count = 10, snapshots = 1;
  int origin = 0, dest = 0, steps = 0, reps = 5, c = 1;
  std::int64_t max_weight = 10, max_capacity = 0, q = 0;
  bool no_cache = false, normalize = false, undirected = false;
  std::vector<double> values;

  auto* gen = app.add_subcommand("gen", "Generate a random instance file");
  gen->add_option("--kind", kind, "knapsack|tabulated|graph|snapshots");
  gen->add_option("-n,--classes", n, "number of classes");
  gen->add_option("--min-count", min_count);
  gen->add_option("--max-count", max_count);
  gen->add_option("--max-weight", max_weight);
  gen->add_option("--ratio", ratio, "capacity ratio of total weight");
  gen->add_option("--max-capacity", max_capacity, "hard capacity cap (0 = none)");
  gen->add_flag("--normalize", normalize, "divide class values by their counts");
  gen->add_option("--tau", tau);
  gen->add_option("-V,--vertices", vertex_count);
  gen->add_option("--edge-prob", edge_prob);
  gen->add_flag("--undirected", undirected);
  gen->add_option("--cost-max", cost_max);
  gen->add_option("--cost-quantum", cost_quantum, "cost grid spacing (0 = continuous)");
  gen->add_option("--snapshots", snapshots, "snapshot count for kind=snapshots");
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);

  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("file", file)->required();
  solve->add_option("--tau", tau, "override the instance tau");
  solve->add_option("--mode", mode_name, "linear|log");
  solve->add_flag("--no-cache", no_cache, "recontract the chain at every step");
  solve->add_option("--origin", origin);
  solve->add_option("--dest", dest);
  solve->add_option("--steps", steps, "path length n (default: vertex count)");
  solve->add_option("--out", out_path);

  auto* compare = app.add_subcommand("compare", "Solve and compare against a baseline");
  compare->add_option("file", file)->required();
  compare->add_option("--baseline", baseline, "greedy|dp|dijkstra|brute");
  compare->add_option("--tau", tau);
  compare->add_option("--mode", mode_name, "linear|log");
  compare->add_flag("--no-cache", no_cache);
  compare->add_option("--origin", origin);
  compare->add_option("--dest", dest);
  compare->add_option("--steps", steps);
  compare->add_option("--out", out_path);

  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep, emit CSV");
  bench->add_option("--experiment", experiment,
                    "TauSweepKnapsack|TauSweepPath|TimeVsQ|TimeVsN|TimeVsSteps|CachedVsUncached");
  bench->add_option("--values", values, "swept axis values (tau, Q, n or steps)");
  bench->add_option("-n,--classes", n);
  bench->add_option("-Q,--capacity", q);
  bench->add_option("-c,--count", c, "per-class item count");
  bench->add_option("-V,--vertices", vertex_count);
  bench->add_option("--tau", tau);
  bench->add_option("--mode", mode_name, "linear|log");
  bench->add_flag("--no-cache", no_cache);
  bench->add_option("--reps", reps, "repetitions per timing point (median)");
  bench->add_option("--seed", seed);
  bench->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_gen(kind, n, min_count, max_count, max_weight, ratio, max_capacity, normalize,
                     tau > 0.0 ? tau : 1.0, vertex_count, edge_prob, undirected, cost_max,
                     cost_quantum, snapshots, seed, out_path);
    const Mode mode = parse_mode(mode_name);
    if (solve->parsed())
      return run_solve(file, tau, mode, !no_cache, origin, dest, steps, out_path);
    if (compare->parsed())
      return run_compare(file, baseline, tau, mode, !no_cache, origin, dest, steps, out_path);
    if (tau <= 0.0) tau = 1.0;
    return run_bench(experiment, values, n, q, c, vertex_count, tau, mode, !no_cache, reps, seed,
                     out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const NoFeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
