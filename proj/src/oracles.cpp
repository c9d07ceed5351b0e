#include "tn/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace tn {

namespace {

/// Streaming log-sum-exp accumulator, kept separate from the engine's
/// numeric code path.
struct LogAccumulator {
  double max_exp = kNegInf;
  double scaled_sum = 0.0;  // sum of exp(x - max_exp)

  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_exp) {
      scaled_sum += std::exp(x - max_exp);
    } else {
      scaled_sum = scaled_sum * std::exp(max_exp - x) + 1.0;
      max_exp = x;
    }
  }
  double log_total() const {
    return scaled_sum == 0.0 ? kNegInf : max_exp + std::log(scaled_sum);
  }
};

}  // namespace

Solution greedy_knapsack(const KnapsackInstance& instance) {
  const auto start = std::chrono::steady_clock::now();
  instance.validate();
  const int n = instance.num_classes();
  std::vector<const ClassicClass*> classic(n);
  for (int i = 0; i < n; ++i) {
    classic[i] = std::get_if<ClassicClass>(&instance.classes[i]);
    if (!classic[i]) throw std::invalid_argument("greedy baseline needs classic classes");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Decreasing value/weight ratio; zero-weight items are free value and go first.
  auto ratio = [&](int i) {
    return classic[i]->weight == 0 ? std::numeric_limits<double>::infinity()
                                   : classic[i]->value / static_cast<double>(classic[i]->weight);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ratio(a) > ratio(b); });
  Solution sol;
  sol.assignment.assign(n, 0);
  std::int64_t remaining = instance.capacity;
  for (int i : order) {
    const std::int64_t w = classic[i]->weight;
    const std::int64_t fit = w == 0 ? classic[i]->count : remaining / w;
    const int take = static_cast<int>(std::min<std::int64_t>(fit, classic[i]->count));
    sol.assignment[i] = take;
    remaining -= take * w;
  }
  const KnapsackObjective obj = objective(instance, sol.assignment);
  sol.objective = obj.value;
  sol.feasible = obj.feasible;
  sol.elapsed = std::chrono::steady_clock::now() - start;
  return sol;
}

DpResult dp_knapsack(const KnapsackInstance& instance) {
  instance.validate();
  const int n = instance.num_classes();
  const std::int64_t q = instance.capacity;
  constexpr double kUnreached = -std::numeric_limits<double>::infinity();
  // best[w]: max value over assignments of the classes processed so far
  // with exact total weight w; count[w]: how many achieve it (saturating).
  std::vector<double> best(q + 1, kUnreached);
  std::vector<std::int64_t> count(q + 1, 0);
  best[0] = 0.0;
  count[0] = 1;
  std::vector<std::vector<int>> choice(n, std::vector<int>(q + 1, -1));
  auto nearly_equal = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  constexpr std::int64_t kCountCap = 1 << 30;
  for (int i = 0; i < n; ++i) {
    std::vector<double> next(q + 1, kUnreached);
    std::vector<std::int64_t> next_count(q + 1, 0);
    for (std::int64_t w = 0; w <= q; ++w) {
      if (best[w] == kUnreached) continue;
      for (int y = 0; y <= instance.max_count(i); ++y) {
        const std::int64_t nw = w + instance.class_weight(i, y);
        if (nw > q) continue;
        const double nv = best[w] + instance.class_value(i, y);
        if (nearly_equal(nv, next[nw])) {
          next_count[nw] = std::min(kCountCap, next_count[nw] + count[w]);
          if (nv > next[nw]) {
            next[nw] = nv;
            choice[i][nw] = y;
          }
        } else if (nv > next[nw]) {
          next[nw] = nv;
          next_count[nw] = count[w];
          choice[i][nw] = y;
        }
      }
    }
    best.swap(next);
    count.swap(next_count);
  }
  DpResult res;
  std::int64_t best_w = -1;
  double opt = kUnreached;
  for (std::int64_t w = 0; w <= q; ++w) {
    if (best[w] == kUnreached || instance.constrained(w) > q) continue;
    if (best[w] > opt) {
      opt = best[w];
      best_w = w;
    }
  }
  if (best_w < 0) throw NoFeasibleError("no assignment satisfies the constraint");
  res.optimal_value = opt;
  std::int64_t multiplicity = 0;
  for (std::int64_t w = 0; w <= q; ++w) {
    if (best[w] == kUnreached || instance.constrained(w) > q) continue;
    if (nearly_equal(best[w], opt)) multiplicity = std::min(kCountCap, multiplicity + count[w]);
  }
  res.optimum_multiplicity = static_cast<int>(std::min<std::int64_t>(multiplicity, kCountCap));
  res.assignment.assign(n, 0);
  std::int64_t w = best_w;
  for (int i = n - 1; i >= 0; --i) {
    const int y = choice[i][w];
    res.assignment[i] = y;
    w -= instance.class_weight(i, y);
  }
  return res;
}

AmplitudeVector brute_force_amplitudes(const KnapsackInstance& instance, int m,
                                       const std::vector<int>& prefix, Mode mode,
                                       std::int64_t assignment_cap) {
  instance.validate();
  const int n = instance.num_classes();
  if (m < 0 || m >= n || static_cast<int>(prefix.size()) != m)
    throw std::invalid_argument("prefix length must equal the free class index");
  std::int64_t combos = 1;
  for (int k = m; k < n; ++k) {
    combos *= instance.max_count(k) + 1;
    if (combos > assignment_cap) throw std::runtime_error("assignment cap exceeded");
  }
  std::int64_t base_weight = 0;
  for (int k = 0; k < m; ++k) base_weight += instance.class_weight(k, prefix[k]);

  const int dim = instance.max_count(m) + 1;
  std::vector<long double> linear(dim, 0.0L);
  std::vector<LogAccumulator> logs(dim);
  std::vector<int> x(n - m, 0);
  while (true) {
    std::int64_t weight = base_weight;
    double suffix_value = 0.0;
    for (int k = m; k < n; ++k) {
      weight += instance.class_weight(k, x[k - m]);
      suffix_value += instance.class_value(k, x[k - m]);
    }
    if (weight <= instance.capacity && instance.constrained(weight) <= instance.capacity) {
      const double e = instance.tau * suffix_value;
      if (mode == Mode::Linear)
        linear[x[0]] += std::exp(static_cast<long double>(e));
      else
        logs[x[0]].add(e);
    }
    int d = n - m - 1;
    while (d >= 0 && x[d] == instance.max_count(m + d)) x[d--] = 0;
    if (d < 0) break;
    ++x[d];
  }
  AmplitudeVector out(mode, dim);
  for (int i = 0; i < dim; ++i)
    out.values[i] = mode == Mode::Linear ? static_cast<double>(linear[i]) : logs[i].log_total();
  return out;
}

DijkstraResult dijkstra(const Graph& graph, int origin, int destination) {
  const int v = graph.vertex_count();
  if (origin < 0 || origin >= v || destination < 0 || destination >= v)
    throw std::out_of_range("origin/destination out of range");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(v, kInf);
  std::vector<int> prev(v, -1);
  std::vector<bool> done(v, false);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[origin] = 0.0;
  heap.push({0.0, origin});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == destination) break;
    for (const auto& [w, cost] : graph.neighbors(u)) {
      if (w == u) continue;
      const double nd = d + cost;
      if (nd < dist[w]) {
        dist[w] = nd;
        prev[w] = u;
        heap.push({nd, w});
      }
    }
  }
  if (dist[destination] == kInf) throw NoFeasibleError("destination unreachable");
  DijkstraResult res;
  res.distance = dist[destination];
  for (int u = destination; u != -1; u = prev[u]) res.path.push_back(u);
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

namespace {

std::int64_t checked_walk_count(int vertex_count, int free_steps, std::int64_t cap) {
  std::int64_t combos = 1;
  for (int i = 0; i < free_steps; ++i) {
    combos *= vertex_count;
    if (combos > cap) throw std::runtime_error("walk cap exceeded");
  }
  return combos;
}

}  // namespace

BruteForcePathResult brute_force_path(const PathProblem& problem, std::int64_t walk_cap) {
  problem.validate();
  const int n = problem.steps;
  const int v = problem.vertex_count();
  checked_walk_count(v, n - 2, walk_cap);
  BruteForcePathResult res;
  res.cost = std::numeric_limits<double>::infinity();
  std::vector<int> walk(n);
  walk.front() = problem.origin;
  walk.back() = problem.destination;
  // Depth-first over the free vertices; missing edges prune the branch.
  std::vector<int> stack;
  std::function<void(int, double)> visit = [&](int t, double cost) {
    if (cost >= res.cost) return;  // costs are non-negative
    if (t == n - 1) {
      const auto last = problem.snapshot(t - 1).edge_cost(walk[t - 1], walk[t]);
      if (last && cost + *last < res.cost) {
        res.cost = cost + *last;
        res.path = walk;
      }
      return;
    }
    for (int j = 0; j < v; ++j) {
      const auto c = problem.snapshot(t - 1).edge_cost(walk[t - 1], j);
      if (!c) continue;
      walk[t] = j;
      visit(t + 1, cost + *c);
    }
  };
  visit(1, 0.0);
  if (!std::isfinite(res.cost)) throw NoFeasibleError("no n-step walk exists");
  return res;
}

AmplitudeVector brute_force_path_amplitudes(const PathProblem& problem, int m,
                                            const std::vector<int>& prefix, Mode mode,
                                            std::int64_t walk_cap) {
  problem.validate();
  const int n = problem.steps;
  const int v = problem.vertex_count();
  const int num_free = n - 2;  // v_1 .. v_{n-2}
  if (m < 0 || m >= num_free || static_cast<int>(prefix.size()) != m)
    throw std::invalid_argument("prefix length must equal the free vertex index");
  checked_walk_count(v, num_free - m, walk_cap);
  std::vector<long double> linear(v, 0.0L);
  std::vector<LogAccumulator> logs(v);
  std::vector<int> walk(n);
  walk.front() = problem.origin;
  for (int k = 0; k < m; ++k) walk[k + 1] = prefix[k];
  walk.back() = problem.destination;
  // Suffix cost from v_m onward, matching what the chain's psi^m covers.
  std::function<void(int, double)> visit = [&](int t, double cost) {
    if (t == n - 1) {
      const auto last = problem.snapshot(t - 1).edge_cost(walk[t - 1], walk[t]);
      if (!last) return;
      const double e = -problem.tau * (cost + *last);
      if (mode == Mode::Linear)
        linear[walk[m + 1]] += std::exp(static_cast<long double>(e));
      else
        logs[walk[m + 1]].add(e);
      return;
    }
    for (int j = 0; j < v; ++j) {
      const auto c = problem.snapshot(t - 1).edge_cost(walk[t - 1], j);
      if (!c) continue;
      walk[t] = j;
      visit(t + 1, cost + *c);
    }
  };
  visit(m + 1, 0.0);
  AmplitudeVector out(mode, v);
  for (int i = 0; i < v; ++i)
    out.values[i] = mode == Mode::Linear ? static_cast<double>(linear[i]) : logs[i].log_total();
  return out;
}

ComparisonReport compare_knapsack(const Solution& tn_solution, const Solution& baseline) {
  ComparisonReport r;
  r.tn_objective = tn_solution.objective;
  r.baseline_objective = baseline.objective;
  r.relative_error = 1.0 - tn_solution.objective / baseline.objective;
  r.tn_time = tn_solution.elapsed;
  r.baseline_time = baseline.elapsed;
  r.agree = std::abs(r.relative_error) <= 1e-12;
  return r;
}

ComparisonReport compare_path(const Solution& tn_solution, double baseline_cost,
                              std::chrono::duration<double> baseline_time) {
  ComparisonReport r;
  r.tn_objective = tn_solution.objective;
  r.baseline_objective = baseline_cost;
  r.relative_error = tn_solution.objective / baseline_cost - 1.0;
  r.tn_time = tn_solution.elapsed;
  r.baseline_time = baseline_time;
  r.agree = std::abs(r.relative_error) <= 1e-12;
  return r;
}

}  // namespace tn
