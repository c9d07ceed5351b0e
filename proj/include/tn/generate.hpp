#ifndef TN_GENERATE_HPP
#define TN_GENERATE_HPP

#include <cstdint>
#include <random>

#include "tn/knapsack.hpp"
#include "tn/shortest_path.hpp"

namespace tn {

/// Seeded generator with hand-rolled value mappings so the same seed gives
/// the same instance on every platform (std distributions are
/// implementation-defined; the raw mt19937_64 stream is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform real in [0, 1).
  double uniform01();
  /// Uniform real in (0, 1].
  double uniform_positive() { return 1.0 - uniform01(); }

 private:
  std::mt19937_64 gen_;
};

struct KnapsackGenParams {
  int num_classes = 10;
  int min_count = 1;
  int max_count = 1;
  std::int64_t max_weight = 10;
  double capacity_ratio = 0.8;  // Q = floor(ratio * sum c_i w_i)
  std::int64_t max_capacity = 0;  // 0 = no cap
  bool normalize_values = false;  // divide each class value by c_i
  double tau = 1.0;
};

KnapsackInstance gen_knapsack(const KnapsackGenParams& params, std::uint64_t seed);

struct TabulatedGenParams {
  int num_classes = 6;
  int max_count = 4;
  std::int64_t max_step_weight = 6;  // per-selection weight increments
  double capacity_ratio = 0.6;
  std::int64_t max_capacity = 0;
  double tau = 1.0;
  bool monotone_values = false;  // false: arbitrary positive tables
};

KnapsackInstance gen_tabulated_knapsack(const TabulatedGenParams& params, std::uint64_t seed);

struct GraphGenParams {
  int vertex_count = 10;
  double edge_probability = 0.2;
  bool directed = true;
  /// Costs are uniform in (0, cost_max]; with cost_quantum > 0 they are
  /// drawn from the grid {quantum, 2*quantum, ..., cost_max}.
  double cost_max = 1.0;
  double cost_quantum = 0.0;
  /// Adds a random Hamiltonian cycle so the graph is strongly connected.
  bool backbone = true;
};

Graph gen_graph(const GraphGenParams& params, std::uint64_t seed);
std::vector<Graph> gen_snapshots(const GraphGenParams& params, int count, std::uint64_t seed);

}  // namespace tn

#endif  // TN_GENERATE_HPP
