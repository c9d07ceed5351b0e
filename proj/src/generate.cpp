#include "tn/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tn {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(gen_() % span);
}

double Rng::uniform01() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

KnapsackInstance gen_knapsack(const KnapsackGenParams& params, std::uint64_t seed) {
  if (params.num_classes < 1 || params.min_count < 1 || params.max_count < params.min_count ||
      params.max_weight < 1 || !(params.capacity_ratio > 0.0) || !(params.tau > 0.0))
    throw std::invalid_argument("invalid knapsack generator parameters");
  Rng rng(seed);
  KnapsackInstance inst;
  inst.tau = params.tau;
  std::int64_t weight_mass = 0;
  for (int i = 0; i < params.num_classes; ++i) {
    ClassicClass c;
    c.weight = rng.uniform_int(1, params.max_weight);
    c.count = static_cast<int>(rng.uniform_int(params.min_count, params.max_count));
    c.value = rng.uniform_positive();
    if (params.normalize_values) c.value /= c.count;
    weight_mass += c.weight * c.count;
    inst.classes.push_back(c);
  }
  inst.capacity = static_cast<std::int64_t>(std::floor(params.capacity_ratio *
                                                       static_cast<double>(weight_mass)));
  if (params.max_capacity > 0) inst.capacity = std::min(inst.capacity, params.max_capacity);
  inst.capacity = std::max<std::int64_t>(inst.capacity, 0);
  return inst;
}

KnapsackInstance gen_tabulated_knapsack(const TabulatedGenParams& params, std::uint64_t seed) {
  if (params.num_classes < 1 || params.max_count < 1 || params.max_step_weight < 1 ||
      !(params.capacity_ratio > 0.0) || !(params.tau > 0.0))
    throw std::invalid_argument("invalid tabulated generator parameters");
  Rng rng(seed);
  KnapsackInstance inst;
  inst.tau = params.tau;
  std::int64_t weight_mass = 0;
  for (int i = 0; i < params.num_classes; ++i) {
    const int c = static_cast<int>(rng.uniform_int(1, params.max_count));
    TabulatedClass t;
    t.weights.assign(c + 1, 0);
    t.values.assign(c + 1, 0.0);
    for (int y = 1; y <= c; ++y) {
      t.weights[y] = t.weights[y - 1] + rng.uniform_int(0, params.max_step_weight);
      t.values[y] = params.monotone_values ? t.values[y - 1] + rng.uniform_positive()
                                           : rng.uniform_positive();
    }
    weight_mass += t.weights.back();
    inst.classes.push_back(std::move(t));
  }
  inst.capacity = static_cast<std::int64_t>(std::floor(params.capacity_ratio *
                                                       static_cast<double>(weight_mass)));
  if (params.max_capacity > 0) inst.capacity = std::min(inst.capacity, params.max_capacity);
  inst.capacity = std::max<std::int64_t>(inst.capacity, 1);
  return inst;
}

namespace {

double draw_cost(Rng& rng, const GraphGenParams& params) {
  if (params.cost_quantum > 0.0) {
    const std::int64_t levels =
        std::max<std::int64_t>(1, std::llround(params.cost_max / params.cost_quantum));
    return static_cast<double>(rng.uniform_int(1, levels)) * params.cost_quantum;
  }
  return params.cost_max * rng.uniform_positive();
}

}  // namespace

Graph gen_graph(const GraphGenParams& params, std::uint64_t seed) {
  if (params.vertex_count < 1 || params.edge_probability < 0.0 || params.edge_probability > 1.0 ||
      !(params.cost_max > 0.0))
    throw std::invalid_argument("invalid graph generator parameters");
  Rng rng(seed);
  Graph g(params.vertex_count, params.directed);
  const int v = params.vertex_count;
  if (params.backbone && v > 1) {
    std::vector<int> perm(v);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = v - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    for (int i = 0; i < v; ++i)
      g.add_edge(perm[i], perm[(i + 1) % v], draw_cost(rng, params));
  }
  for (int i = 0; i < v; ++i) {
    for (int j = params.directed ? 0 : i + 1; j < v; ++j) {
      if (j == i) continue;
      if (rng.uniform01() < params.edge_probability) g.add_edge(i, j, draw_cost(rng, params));
    }
  }
  return g;
}

std::vector<Graph> gen_snapshots(const GraphGenParams& params, int count, std::uint64_t seed) {
  std::vector<Graph> out;
  out.reserve(count);
  for (int t = 0; t < count; ++t)
    out.push_back(gen_graph(params, seed * 1000003ULL + static_cast<std::uint64_t>(t)));
  return out;
}

}  // namespace tn
