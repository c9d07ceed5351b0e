#ifndef TN_ORACLES_HPP
#define TN_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "tn/knapsack.hpp"
#include "tn/shortest_path.hpp"

namespace tn {

/// Relative-error comparison between a tensor-network run and a baseline.
/// Knapsack: epsilon = 1 - V_tn / V_baseline; shortest path:
/// epsilon = C_tn / C_baseline - 1.
struct ComparisonReport {
  double tn_objective = 0.0;
  double baseline_objective = 0.0;
  double relative_error = 0.0;
  std::chrono::duration<double> tn_time{0.0};
  std::chrono::duration<double> baseline_time{0.0};
  bool agree = false;
};

/// Greedy baseline over classic classes, filling in decreasing
/// value/weight ratio order.
Solution greedy_knapsack(const KnapsackInstance& instance);

struct DpResult {
  double optimal_value = 0.0;
  std::vector<int> assignment;
  /// Number of distinct optimal assignments (counted up to the given value
  /// tolerance, capped at a small constant).
  int optimum_multiplicity = 1;
};

/// Exact bounded-knapsack dynamic programming over (class, exact weight)
/// states; covers tabulated classes and outer constraints directly.
DpResult dp_knapsack(const KnapsackInstance& instance);

/// Enumerates every completion of `prefix`, filters feasibility, and
/// accumulates e^{tau * suffix value} per selection of class m with its own
/// streaming log accumulation, independent of the chain engine.
AmplitudeVector brute_force_amplitudes(const KnapsackInstance& instance, int m,
                                       const std::vector<int>& prefix,
                                       Mode mode = Mode::Linear,
                                       std::int64_t assignment_cap = 100000);

struct DijkstraResult {
  double distance = 0.0;
  std::vector<int> path;
};

/// Standard single-pair shortest path with a binary-heap priority queue.
/// Throws NoFeasibleError when the destination is unreachable.
DijkstraResult dijkstra(const Graph& graph, int origin, int destination);

struct BruteForcePathResult {
  double cost = 0.0;
  std::vector<int> path;
};

/// Exhaustive minimum over all n-step walks from origin to destination,
/// self-loops included.
BruteForcePathResult brute_force_path(const PathProblem& problem,
                                      std::int64_t walk_cap = 100000);

/// Amplitude sums per value of free vertex v_{m+1}, enumerating every walk
/// consistent with the engine-level prefix (values of v_1 .. v_m).
AmplitudeVector brute_force_path_amplitudes(const PathProblem& problem, int m,
                                            const std::vector<int>& prefix,
                                            Mode mode = Mode::Linear,
                                            std::int64_t walk_cap = 100000);

ComparisonReport compare_knapsack(const Solution& tn_solution, const Solution& baseline);
ComparisonReport compare_path(const Solution& tn_solution, double baseline_cost,
                              std::chrono::duration<double> baseline_time);

}  // namespace tn

#endif  // TN_ORACLES_HPP
