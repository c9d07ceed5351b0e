#include "tn/shortest_path.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace tn {

Graph::Graph(int vertex_count, bool directed)
    : vertex_count_(vertex_count), directed_(directed), adjacency_(vertex_count) {
  if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (int i = 0; i < vertex_count; ++i) adjacency_[i].push_back({i, 0.0});
}

void Graph::insert(int src, int dst, double cost) {
  auto& row = adjacency_[src];
  auto it = std::lower_bound(row.begin(), row.end(), dst,
                             [](const auto& e, int v) { return e.first < v; });
  if (it != row.end() && it->first == dst)
    it->second = cost;
  else
    row.insert(it, {dst, cost});
}

void Graph::add_edge(int src, int dst, double cost) {
  if (src < 0 || src >= vertex_count_ || dst < 0 || dst >= vertex_count_)
    throw std::out_of_range("edge vertex out of range");
  if (!(cost >= 0.0)) throw std::invalid_argument("edge costs must be non-negative");
  if (src == dst) {
    if (cost != 0.0) throw std::invalid_argument("self-loops are implicit with cost 0");
    return;
  }
  insert(src, dst, cost);
  if (!directed_) insert(dst, src, cost);
}

std::optional<double> Graph::edge_cost(int i, int j) const {
  if (i < 0 || i >= vertex_count_ || j < 0 || j >= vertex_count_)
    throw std::out_of_range("vertex out of range");
  const auto& row = adjacency_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, int v) { return e.first < v; });
  if (it != row.end() && it->first == j) return it->second;
  return std::nullopt;
}

const std::vector<std::pair<int, double>>& Graph::neighbors(int i) const {
  return adjacency_[i];
}

std::int64_t Graph::edge_entry_count() const {
  std::int64_t n = 0;
  for (const auto& row : adjacency_) n += static_cast<std::int64_t>(row.size());
  return n;
}

void PathProblem::validate() const {
  if (snapshots.empty()) throw std::invalid_argument("path problem needs a graph");
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
  const int v = vertex_count();
  if (origin < 0 || origin >= v || destination < 0 || destination >= v)
    throw std::out_of_range("origin/destination out of range");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be non-negative");
  if (time_dependent()) {
    if (static_cast<int>(snapshots.size()) != steps - 1)
      throw std::invalid_argument("time-dependent problem needs exactly steps-1 snapshots");
    for (const Graph& g : snapshots)
      if (g.vertex_count() != v)
        throw std::invalid_argument("all snapshots must share the vertex set");
  }
}

SparseTransition build_head_sp(const PathProblem& problem, int m, int previous_vertex) {
  if (m < 1 || m > problem.steps - 2) throw std::out_of_range("head step index out of range");
  const int v = problem.vertex_count();
  const Graph& g_in = problem.snapshot(m - 1);
  const Graph& g_out = problem.snapshot(m);
  SparseTransition t(v, v);
  for (const auto& [i, cost_pi] : g_in.neighbors(previous_vertex))
    for (const auto& [j, cost_ij] : g_out.neighbors(i))
      t.add(i, j, -problem.tau * (cost_pi + cost_ij));
  t.finalize();
  return t;
}

SparseTransition build_middle_sp(const PathProblem& problem, int k) {
  if (k < 0 || k > problem.steps - 2) throw std::out_of_range("middle step index out of range");
  const int v = problem.vertex_count();
  const Graph& g = problem.snapshot(k);
  SparseTransition t(v, v);
  for (int i = 0; i < v; ++i)
    for (const auto& [j, cost] : g.neighbors(i)) t.add(i, j, -problem.tau * cost);
  t.finalize();
  return t;
}

AmplitudeVector build_terminal_sp(const PathProblem& problem, Mode mode) {
  if (problem.steps < 3) throw std::invalid_argument("terminal vector needs steps >= 3");
  const int v = problem.vertex_count();
  const Graph& g_in = problem.snapshot(problem.steps - 3);
  const Graph& g_out = problem.snapshot(problem.steps - 2);
  AmplitudeVector out(mode, v);
  for (int i = 0; i < v; ++i) {
    Amplitude acc = amp_zero(mode);
    for (const auto& [j, cost_ij] : g_in.neighbors(i)) {
      const auto cost_jd = g_out.edge_cost(j, problem.destination);
      if (!cost_jd) continue;
      acc = amp_add(acc, amp_from_exponent(-problem.tau * (cost_ij + *cost_jd), mode));
    }
    out.values[i] = acc.value;
  }
  return out;
}

PathCost path_cost(const PathProblem& problem, const std::vector<int>& path) {
  if (static_cast<int>(path.size()) != problem.steps)
    throw std::invalid_argument("path length must equal the step count");
  PathCost pc;
  pc.feasible = true;
  for (int t = 0; t + 1 < problem.steps; ++t) {
    const auto cost = problem.snapshot(t).edge_cost(path[t], path[t + 1]);
    if (!cost) {
      pc.cost = std::numeric_limits<double>::infinity();
      pc.feasible = false;
      return pc;
    }
    pc.cost += *cost;
  }
  return pc;
}

PathChain::PathChain(const PathProblem& problem) : problem_(problem) {
  problem_.validate();
  if (problem_.steps < 4) throw std::invalid_argument("chain form needs steps >= 4");
}

SparseTransition PathChain::head_transition(int m, const std::vector<int>& prefix) const {
  const int p = prefix.empty() ? problem_.origin : prefix.back();
  return build_head_sp(problem_, m + 1, p);
}

SparseTransition PathChain::middle_transition(int k) const {
  return build_middle_sp(problem_, k + 1);
}

AmplitudeVector PathChain::terminal_vector(Mode mode) const {
  return build_terminal_sp(problem_, mode);
}

AmplitudeVector PathChain::final_vector(Mode mode) const {
  // Closes the last head: the hop from v_{n-2} to the destination.
  const int v = problem_.vertex_count();
  const Graph& g = problem_.snapshot(problem_.steps - 2);
  AmplitudeVector out(mode, v);
  for (int j = 0; j < v; ++j) {
    const auto cost = g.edge_cost(j, problem_.destination);
    out.values[j] = cost ? amp_from_exponent(-problem_.tau * *cost, mode).value
                         : amp_zero(mode).value;
  }
  return out;
}

namespace {

/// Picks the marginalized second-to-last vertex: the two-hop completion
/// u -> j -> d with minimal cost, ties to the lowest j.
std::pair<int, double> final_hop_argmax(const PathProblem& problem, int u) {
  const Graph& g_in = problem.snapshot(problem.steps - 3);
  const Graph& g_out = problem.snapshot(problem.steps - 2);
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  double second_cost = std::numeric_limits<double>::infinity();
  for (const auto& [j, cost_uj] : g_in.neighbors(u)) {
    const auto cost_jd = g_out.edge_cost(j, problem.destination);
    if (!cost_jd) continue;
    const double c = cost_uj + *cost_jd;
    if (c < best_cost) {
      second_cost = best_cost;
      best_cost = c;
      best = j;
    } else if (c < second_cost) {
      second_cost = c;
    }
  }
  if (best < 0) throw NoFeasibleError("no two-hop completion to the destination");
  return {best, std::isinf(second_cost) ? std::numeric_limits<double>::infinity()
                                        : problem.tau * (second_cost - best_cost)};
}

}  // namespace

Solution solve_path(const PathProblem& problem, Mode mode, bool cached,
                    const EngineOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  problem.validate();
  Solution sol;
  const int n = problem.steps;
  if (n == 2) {
    if (!problem.snapshot(0).edge_cost(problem.origin, problem.destination))
      throw NoFeasibleError("no direct edge between origin and destination");
    sol.assignment = {problem.origin, problem.destination};
  } else if (n == 3) {
    const auto [v1, margin] = final_hop_argmax(problem, problem.origin);
    sol.per_variable_margins.push_back(margin);
    sol.assignment = {problem.origin, v1, problem.destination};
  } else {
    PathChain chain(problem);
    Solution inner;
    if (cached) {
      ChainCache cache = backward_sweep(chain, mode, opts);
      inner = decimate(chain, cache, opts);
    } else {
      inner = solve_uncached(chain, mode, opts);
    }
    const auto [last_free, margin] = final_hop_argmax(problem, inner.assignment.back());
    sol.numeric = inner.numeric;
    sol.per_variable_margins = std::move(inner.per_variable_margins);
    sol.per_variable_margins.push_back(margin);
    sol.assignment.reserve(n);
    sol.assignment.push_back(problem.origin);
    for (int v : inner.assignment) sol.assignment.push_back(v);
    sol.assignment.push_back(last_free);
    sol.assignment.push_back(problem.destination);
  }
  const PathCost pc = path_cost(problem, sol.assignment);
  sol.objective = pc.cost;
  sol.feasible = pc.feasible;
  sol.elapsed = std::chrono::steady_clock::now() - start;
  return sol;
}

}  // namespace tn
