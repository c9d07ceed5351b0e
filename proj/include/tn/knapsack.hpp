#ifndef TN_KNAPSACK_HPP
#define TN_KNAPSACK_HPP

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "tn/chain.hpp"

namespace tn {

/// Classic class: up to `count` copies of an item with integer weight and
/// positive real value.
struct ClassicClass {
  std::int64_t weight = 0;
  double value = 0.0;
  int count = 1;
};

/// Tabulated class: explicit weight/value tables over the selection count
/// y = 0..c. weights[0] == 0 and values[0] == 0.
struct TabulatedClass {
  std::vector<std::int64_t> weights;
  std::vector<double> values;
};

using KnapsackClass = std::variant<ClassicClass, TabulatedClass>;

/// Constraint applied to the accumulated weight before comparing against
/// the capacity. Polynomial coefficients are non-negative integers, which
/// keeps F(W) >= W and the weight-state dimension at Q+1.
struct OuterConstraint {
  struct Polynomial {
    std::vector<std::int64_t> coefficients;  // a_0 + a_1 z + ...
  };
  struct Tabulated {
    std::vector<std::int64_t> table;  // F(W) for W = 0..Q, monotone non-decreasing
  };
  std::variant<Polynomial, Tabulated> kind;

  /// F(w), saturating well above any capacity instead of overflowing.
  std::int64_t eval(std::int64_t w) const;
};

struct KnapsackInstance {
  std::int64_t capacity = 0;
  double tau = 1.0;
  std::vector<KnapsackClass> classes;
  std::optional<OuterConstraint> outer;

  int num_classes() const { return static_cast<int>(classes.size()); }
  int max_count(int i) const;
  std::int64_t class_weight(int i, int y) const;
  double class_value(int i, int y) const;
  std::int64_t constrained(std::int64_t weight) const;  // F(W), identity when no outer

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

struct KnapsackObjective {
  double value = 0.0;
  std::int64_t weight = 0;
  bool feasible = false;
};

/// Head tensor M^m: rows are selection counts of class m, columns the
/// absolute accumulated weight including the fixed prefix.
SparseTransition build_head(const KnapsackInstance& instance, int m,
                            const std::vector<int>& prefix);

/// Middle tensor K^k for 0 < k < n-1: weight-state to weight-state with one
/// diagonal per selection count.
SparseTransition build_middle(const KnapsackInstance& instance, int k);

/// Tail vector over the weight state entering the last class: entry i sums
/// e^{tau v_{n-1,y}} over every feasible selection y of the last class, so
/// chain amplitudes stay exact sums over assignments.
AmplitudeVector build_terminal(const KnapsackInstance& instance, Mode mode);

KnapsackObjective objective(const KnapsackInstance& instance, const std::vector<int>& assignment);

/// ChainProblem wiring for the engine.
class KnapsackChain final : public ChainProblem {
 public:
  explicit KnapsackChain(const KnapsackInstance& instance);

  int num_variables() const override { return instance_.num_classes(); }
  int domain_size(int m) const override { return instance_.max_count(m) + 1; }
  SparseTransition head_transition(int m, const std::vector<int>& prefix) const override;
  SparseTransition middle_transition(int k) const override;
  AmplitudeVector terminal_vector(Mode mode) const override;
  AmplitudeVector final_vector(Mode mode) const override;
  double exact_objective(const std::vector<int>& assignment) const override;

 private:
  const KnapsackInstance& instance_;
};

Solution solve_knapsack(const KnapsackInstance& instance, Mode mode, bool cached = true,
                        const EngineOptions& opts = {});

/// Advisory tau suggestion for the given numeric mode: large enough to
/// separate assignments whose values differ by a unit of the instance's
/// value scale, and in Linear mode capped to keep amplitudes finite.
double suggest_tau(const KnapsackInstance& instance, Mode mode);

}  // namespace tn

#endif  // TN_KNAPSACK_HPP
