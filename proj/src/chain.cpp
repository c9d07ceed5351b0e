#include "tn/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace tn {

namespace {

int argmax_vector(const AmplitudeVector& psi) {
  int best = 0;
  bool any = !psi.is_zero(0);
  for (Eigen::Index i = 1; i < psi.size(); ++i) {
    if (!psi.is_zero(i)) any = true;
    if (psi.values[i] > psi.values[best]) best = static_cast<int>(i);
  }
  if (!any) throw NoFeasibleError("all-zero psi vector");
  return best;
}

double log_margin(const AmplitudeVector& psi, int best) {
  double second = kNegInf;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (static_cast<int>(i) == best || psi.is_zero(i)) continue;
    if (psi.values[i] > second) second = psi.values[i];
  }
  if (second == kNegInf) return std::numeric_limits<double>::infinity();
  if (psi.mode == Mode::Linear) return std::log(psi.values[best]) - std::log(second);
  return psi.values[best] - second;
}

}  // namespace

ChainCache backward_sweep(const ChainProblem& problem, Mode mode, const EngineOptions& opts) {
  const int n = problem.num_variables();
  if (n < 1) throw std::invalid_argument("chain needs at least one variable");
  ChainCache cache;
  cache.mode = mode;
  cache.final_vec = problem.final_vector(mode);
  cache.tails.resize(n);
  if (n >= 2) {
    cache.tails[n - 1] = problem.terminal_vector(mode);
    cache.tails[n - 1].observe(cache.numeric, opts.log_ceiling);
    for (int k = n - 2; k >= 1; --k) {
      cache.tails[k] = apply(problem.middle_transition(k), cache.tails[k + 1]);
      cache.tails[k].observe(cache.numeric, opts.log_ceiling);
    }
  }
  return cache;
}

AmplitudeVector psi_vector(const ChainProblem& problem, const ChainCache& cache, int m,
                           const std::vector<int>& prefix) {
  const int n = problem.num_variables();
  if (m < 0 || m >= n) throw std::out_of_range("variable index out of range");
  if (static_cast<int>(prefix.size()) != m)
    throw std::invalid_argument("prefix length must equal variable index");
  const SparseTransition head = problem.head_transition(m, prefix);
  return apply(head, m == n - 1 ? cache.final_vec : cache.tails[m + 1]);
}

Solution decimate(const ChainProblem& problem, ChainCache& cache, const EngineOptions& opts) {
  const int n = problem.num_variables();
  Solution sol;
  sol.assignment.reserve(n);
  sol.per_variable_margins.reserve(n);
  for (int m = 0; m < n; ++m) {
    AmplitudeVector psi = psi_vector(problem, cache, m, sol.assignment);
    psi.observe(cache.numeric, opts.log_ceiling);
    const int pick = argmax_vector(psi);
    sol.per_variable_margins.push_back(log_margin(psi, pick));
    sol.assignment.push_back(pick);
  }
  sol.numeric = cache.numeric;
  sol.objective = problem.exact_objective(sol.assignment);
  sol.feasible = true;
  return sol;
}

Solution solve_uncached(const ChainProblem& problem, Mode mode, const EngineOptions& opts) {
  const int n = problem.num_variables();
  if (n < 1) throw std::invalid_argument("chain needs at least one variable");
  Solution sol;
  NumericReport numeric;
  const AmplitudeVector final_vec = problem.final_vector(mode);
  for (int m = 0; m < n; ++m) {
    // Recontract the remaining chain from the bottom, in the same order as
    // the cached sweep so every argmax decision is bit-identical.
    AmplitudeVector tail;
    if (m == n - 1) {
      tail = final_vec;
    } else {
      tail = problem.terminal_vector(mode);
      for (int k = n - 2; k >= m + 1; --k) tail = apply(problem.middle_transition(k), tail);
    }
    tail.observe(numeric, opts.log_ceiling);
    AmplitudeVector psi = apply(problem.head_transition(m, sol.assignment), tail);
    psi.observe(numeric, opts.log_ceiling);
    const int pick = argmax_vector(psi);
    sol.per_variable_margins.push_back(log_margin(psi, pick));
    sol.assignment.push_back(pick);
  }
  sol.numeric = numeric;
  sol.objective = problem.exact_objective(sol.assignment);
  sol.feasible = true;
  return sol;
}

}  // namespace tn
