#include "tn/knapsack.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tn {

namespace {
// Large sentinel kept small enough that further additions cannot overflow.
constexpr std::int64_t kWeightCap = std::int64_t{1} << 56;
}  // namespace

std::int64_t OuterConstraint::eval(std::int64_t w) const {
  if (const auto* poly = std::get_if<Polynomial>(&kind)) {
    if (w < 0) throw std::invalid_argument("negative weight");
    std::int64_t acc = 0;
    std::int64_t pw = 1;  // w^k, saturating at kWeightCap
    for (std::int64_t a : poly->coefficients) {
      if (a != 0) {
        if (pw >= kWeightCap || a > (kWeightCap - acc) / pw) return kWeightCap;
        acc += a * pw;
      }
      if (w > 0 && pw > kWeightCap / w)
        pw = kWeightCap;
      else
        pw *= w;
    }
    return acc;
  }
  const auto& table = std::get<Tabulated>(kind).table;
  if (w < 0) throw std::invalid_argument("negative weight");
  if (w >= static_cast<std::int64_t>(table.size())) return kWeightCap;
  return table[w];
}

int KnapsackInstance::max_count(int i) const {
  if (const auto* c = std::get_if<ClassicClass>(&classes[i])) return c->count;
  return static_cast<int>(std::get<TabulatedClass>(classes[i]).weights.size()) - 1;
}

std::int64_t KnapsackInstance::class_weight(int i, int y) const {
  if (const auto* c = std::get_if<ClassicClass>(&classes[i])) return c->weight * y;
  return std::get<TabulatedClass>(classes[i]).weights[y];
}

double KnapsackInstance::class_value(int i, int y) const {
  if (const auto* c = std::get_if<ClassicClass>(&classes[i])) return c->value * y;
  return std::get<TabulatedClass>(classes[i]).values[y];
}

std::int64_t KnapsackInstance::constrained(std::int64_t weight) const {
  return outer ? outer->eval(weight) : weight;
}

void KnapsackInstance::validate() const {
  if (capacity < 0) throw std::invalid_argument("capacity must be non-negative");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be non-negative");
  if (classes.empty()) throw std::invalid_argument("instance needs at least one class");
  for (int i = 0; i < num_classes(); ++i) {
    if (const auto* c = std::get_if<ClassicClass>(&classes[i])) {
      if (c->weight < 0)
        throw std::invalid_argument("weights must be non-negative integers; rescale real weights");
      if (c->count < 1) throw std::invalid_argument("class count must be >= 1");
      if (!(c->value > 0.0)) throw std::invalid_argument("class value must be positive");
    } else {
      const auto& t = std::get<TabulatedClass>(classes[i]);
      if (t.weights.size() < 2 || t.weights.size() != t.values.size())
        throw std::invalid_argument("tabulated class needs matching weight/value tables");
      if (t.weights[0] != 0 || t.values[0] != 0.0)
        throw std::invalid_argument("tabulated class must have w[0]=0 and v[0]=0");
      for (std::int64_t w : t.weights)
        if (w < 0) throw std::invalid_argument("weights must be non-negative integers");
    }
  }
  if (outer) {
    if (const auto* poly = std::get_if<OuterConstraint::Polynomial>(&outer->kind)) {
      if (poly->coefficients.empty())
        throw std::invalid_argument("polynomial constraint needs coefficients");
      for (std::int64_t a : poly->coefficients)
        if (a < 0) throw std::invalid_argument("polynomial coefficients must be non-negative");
    } else {
      const auto& table = std::get<OuterConstraint::Tabulated>(outer->kind).table;
      for (std::size_t i = 1; i < table.size(); ++i)
        if (table[i] < table[i - 1])
          throw std::invalid_argument("tabulated constraint must be monotone");
    }
    // F(W) >= W keeps every useful weight state within 0..Q.
    for (std::int64_t w = 0; w <= capacity; ++w)
      if (outer->eval(w) < w)
        throw std::invalid_argument("outer constraint must satisfy F(W) >= W on 0..Q");
  }
}

namespace {

std::int64_t prefix_weight(const KnapsackInstance& instance, const std::vector<int>& prefix) {
  std::int64_t w = 0;
  for (int k = 0; k < static_cast<int>(prefix.size()); ++k)
    w += instance.class_weight(k, prefix[k]);
  return w;
}

}  // namespace

SparseTransition build_head(const KnapsackInstance& instance, int m,
                            const std::vector<int>& prefix) {
  const int n = instance.num_classes();
  const std::int64_t q = instance.capacity;
  const std::int64_t base = prefix_weight(instance, prefix);
  if (base > q) throw std::invalid_argument("prefix weight already exceeds capacity");
  const bool last = m == n - 1;
  SparseTransition t(instance.max_count(m) + 1, static_cast<int>(q) + 1);
  for (int y = 0; y <= instance.max_count(m); ++y) {
    const std::int64_t mu = base + instance.class_weight(m, y);
    if (mu > q) continue;
    if (last && instance.constrained(mu) > q) continue;
    t.add(y, static_cast<int>(mu), instance.tau * instance.class_value(m, y));
  }
  t.finalize();
  return t;
}

SparseTransition build_middle(const KnapsackInstance& instance, int k) {
  const std::int64_t q = instance.capacity;
  SparseTransition t(static_cast<int>(q) + 1, static_cast<int>(q) + 1);
  const int c = instance.max_count(k);
  // Row-major emission keeps finalize()'s sort near-linear on large Q.
  for (std::int64_t i = 0; i <= q; ++i)
    for (int y = 0; y <= c; ++y) {
      const std::int64_t w = instance.class_weight(k, y);
      if (i + w > q) continue;
      t.add(static_cast<int>(i), static_cast<int>(i + w),
            instance.tau * instance.class_value(k, y));
    }
  t.finalize();
  return t;
}

AmplitudeVector build_terminal(const KnapsackInstance& instance, Mode mode) {
  const int n = instance.num_classes();
  const std::int64_t q = instance.capacity;
  AmplitudeVector v(mode, q + 1);
  for (std::int64_t i = 0; i <= q; ++i) {
    Amplitude acc = amp_zero(mode);
    for (int y = 0; y <= instance.max_count(n - 1); ++y) {
      const std::int64_t mu = i + instance.class_weight(n - 1, y);
      if (mu > q || instance.constrained(mu) > q) continue;
      acc = amp_add(acc, amp_from_exponent(instance.tau * instance.class_value(n - 1, y), mode));
    }
    v.values[i] = acc.value;
  }
  return v;
}

KnapsackObjective objective(const KnapsackInstance& instance, const std::vector<int>& assignment) {
  const int n = instance.num_classes();
  if (static_cast<int>(assignment.size()) != n)
    throw std::invalid_argument("assignment length mismatch");
  KnapsackObjective obj;
  for (int i = 0; i < n; ++i) {
    if (assignment[i] < 0 || assignment[i] > instance.max_count(i))
      throw std::out_of_range("assignment entry out of range for class " + std::to_string(i));
    obj.value += instance.class_value(i, assignment[i]);
    obj.weight += instance.class_weight(i, assignment[i]);
  }
  obj.feasible = instance.constrained(obj.weight) <= instance.capacity;
  return obj;
}

KnapsackChain::KnapsackChain(const KnapsackInstance& instance) : instance_(instance) {
  instance_.validate();
}

SparseTransition KnapsackChain::head_transition(int m, const std::vector<int>& prefix) const {
  return build_head(instance_, m, prefix);
}

SparseTransition KnapsackChain::middle_transition(int k) const {
  return build_middle(instance_, k);
}

AmplitudeVector KnapsackChain::terminal_vector(Mode mode) const {
  return build_terminal(instance_, mode);
}

AmplitudeVector KnapsackChain::final_vector(Mode mode) const {
  // Feasibility is already enforced by the last head's entries.
  AmplitudeVector v(mode, instance_.capacity + 1);
  v.values.setConstant(mode == Mode::Linear ? 1.0 : 0.0);
  return v;
}

double KnapsackChain::exact_objective(const std::vector<int>& assignment) const {
  return objective(instance_, assignment).value;
}

Solution solve_knapsack(const KnapsackInstance& instance, Mode mode, bool cached,
                        const EngineOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  KnapsackChain chain(instance);
  Solution sol;
  if (cached) {
    ChainCache cache = backward_sweep(chain, mode, opts);
    sol = decimate(chain, cache, opts);
  } else {
    sol = solve_uncached(chain, mode, opts);
  }
  const KnapsackObjective obj = objective(instance, sol.assignment);
  sol.objective = obj.value;
  sol.feasible = obj.feasible;
  sol.elapsed = std::chrono::steady_clock::now() - start;
  return sol;
}

double suggest_tau(const KnapsackInstance& instance, Mode mode) {
  double value_sum = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  double log_combos = 0.0;
  for (int i = 0; i < instance.num_classes(); ++i) {
    double vmax = 0.0;
    for (int y = 1; y <= instance.max_count(i); ++y) {
      const double v = instance.class_value(i, y);
      vmax = std::max(vmax, v);
      if (v > 0.0) min_value = std::min(min_value, v);
    }
    value_sum += vmax;
    log_combos += std::log(instance.max_count(i) + 1.0);
  }
  if (!(value_sum > 0.0)) return 1.0;
  if (mode == Mode::Linear) {
    // Keep the largest accumulated exponent inside double range.
    return 0.8 * std::log(std::numeric_limits<double>::max()) / (value_sum + log_combos);
  }
  const double scale = std::isfinite(min_value) ? min_value : 1.0;
  return (log_combos + 1.0) / scale;
}

}  // namespace tn
