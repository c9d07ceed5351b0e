#include <doctest.h>

#include <cmath>
#include <vector>

#include "tn/generate.hpp"
#include "tn/knapsack.hpp"
#include "tn/oracles.hpp"

using namespace tn;

namespace {

KnapsackInstance two_item_instance(double tau = 1.0) {
  // w = [2, 3], v = [3, 4], c = [1, 1], Q = 4
  KnapsackInstance inst;
  inst.capacity = 4;
  inst.tau = tau;
  inst.classes = {ClassicClass{2, 3.0, 1}, ClassicClass{3, 4.0, 1}};
  return inst;
}

}  // namespace

TEST_CASE("head tensor maps selection counts to absolute weights") {
  const KnapsackInstance inst = two_item_instance();
  const SparseTransition head = build_head(inst, 0, {});
  REQUIRE(head.nnz() == 2);
  CHECK(head.in_dim == 2);
  CHECK(head.out_dim == 5);
  CHECK(head.entries[0].row == 0);
  CHECK(head.entries[0].col == 0);
  CHECK(head.entries[0].exponent == doctest::Approx(0.0));
  CHECK(head.entries[1].row == 1);
  CHECK(head.entries[1].col == 2);
  CHECK(head.entries[1].exponent == doctest::Approx(3.0));
}

TEST_CASE("head columns shift by the fixed prefix weight") {
  KnapsackInstance inst = two_item_instance();
  inst.capacity = 5;
  const SparseTransition head = build_head(inst, 1, {1});  // prefix weight 2
  REQUIRE(head.nnz() == 2);
  CHECK(head.entries[0].col == 2);  // y = 0 lands on the prefix weight
  CHECK(head.entries[1].col == 5);  // y = 1: 2 + 3 <= Q
  // At Q = 4 the second item no longer fits after the prefix.
  const KnapsackInstance base = two_item_instance();
  CHECK(build_head(base, 1, {1}).nnz() == 1);
  KnapsackInstance tight = base;
  tight.capacity = 1;
  CHECK_THROWS_AS(build_head(tight, 1, {1}), std::invalid_argument);
}

TEST_CASE("middle tensor has one diagonal per selection count") {
  KnapsackInstance inst;
  inst.capacity = 4;
  inst.classes = {ClassicClass{1, 1.0, 1}, ClassicClass{3, 2.0, 1}, ClassicClass{1, 1.0, 1}};
  const SparseTransition mid = build_middle(inst, 1);
  // y = 0: five (i, i) entries; y = 1 (w = 3): i = 0 and i = 1.
  CHECK(mid.nnz() == 7);
  for (const auto& e : mid.entries) CHECK((e.col - e.row == 0 || e.col - e.row == 3));
}

TEST_CASE("zero-weight selections collapse onto the diagonal as a sum") {
  KnapsackInstance inst;
  inst.capacity = 3;
  inst.tau = 1.0;
  inst.classes = {ClassicClass{1, 1.0, 1}, ClassicClass{0, 2.0, 1}, ClassicClass{1, 1.0, 1}};
  const SparseTransition mid = build_middle(inst, 1);
  CHECK(mid.nnz() == 4);  // both counts merge into (i, i)
  for (const auto& e : mid.entries)
    CHECK(e.exponent == doctest::Approx(std::log(1.0 + std::exp(2.0))));
}

TEST_CASE("terminal vector sums feasible last-class amplitudes") {
  const KnapsackInstance inst = two_item_instance();
  const AmplitudeVector term = build_terminal(inst, Mode::Linear);
  REQUIRE(term.size() == 5);
  CHECK(term.values[0] == doctest::Approx(1.0 + std::exp(4.0)));
  CHECK(term.values[1] == doctest::Approx(1.0 + std::exp(4.0)));
  CHECK(term.values[2] == doctest::Approx(1.0));  // 2 + 3 > Q leaves only y = 0
  CHECK(term.values[4] == doctest::Approx(1.0));
  const AmplitudeVector lg = build_terminal(inst, Mode::LogStabilized);
  for (int i = 0; i < 5; ++i)
    CHECK(std::exp(lg.values[i]) == doctest::Approx(term.values[i]).epsilon(1e-12));
}

TEST_CASE("projected amplitudes equal brute-force sums over completions") {
  const KnapsackInstance inst = two_item_instance();
  KnapsackChain chain(inst);
  ChainCache cache = backward_sweep(chain, Mode::Linear);
  const AmplitudeVector psi0 = psi_vector(chain, cache, 0, {});
  CHECK(psi0.values[0] == doctest::Approx(1.0 + std::exp(4.0)));
  CHECK(psi0.values[1] == doctest::Approx(std::exp(3.0)));
  const AmplitudeVector oracle = brute_force_amplitudes(inst, 0, {});
  CHECK(psi0.values[0] == doctest::Approx(oracle.values[0]).epsilon(1e-12));
  CHECK(psi0.values[1] == doctest::Approx(oracle.values[1]).epsilon(1e-12));
}

TEST_CASE("projected amplitudes match the oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    KnapsackGenParams p;
    p.num_classes = 5;
    p.max_count = 3;
    p.max_weight = 6;
    KnapsackInstance inst = gen_knapsack(p, seed);
    inst.tau = 0.7;
    KnapsackChain chain(inst);
    for (Mode mode : {Mode::Linear, Mode::LogStabilized}) {
      ChainCache cache = backward_sweep(chain, mode);
      std::vector<int> prefix;
      for (int m = 0; m < inst.num_classes(); ++m) {
        const AmplitudeVector psi = psi_vector(chain, cache, m, prefix);
        const AmplitudeVector oracle = brute_force_amplitudes(inst, m, prefix, mode);
        REQUIRE(psi.size() == oracle.size());
        for (Eigen::Index y = 0; y < psi.size(); ++y) {
          if (oracle.is_zero(y)) {
            CHECK(psi.is_zero(y));
            continue;
          }
          const double a = mode == Mode::Linear ? std::log(psi.values[y]) : psi.values[y];
          const double b = mode == Mode::Linear ? std::log(oracle.values[y]) : oracle.values[y];
          CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
        prefix.push_back(0);
      }
    }
  }
}

TEST_CASE("solving the two-item example selects the single best item") {
  for (double tau : {1.0, 10.0}) {
    const Solution sol = solve_knapsack(two_item_instance(tau), Mode::Linear);
    CHECK(sol.assignment == std::vector<int>{0, 1});
    CHECK(sol.objective == doctest::Approx(4.0));
    CHECK(sol.feasible);
    CHECK(sol.per_variable_margins.size() == 2);
  }
}

TEST_CASE("capacity below every weight forces the empty selection") {
  KnapsackInstance inst = two_item_instance();
  inst.capacity = 1;
  const Solution sol = solve_knapsack(inst, Mode::LogStabilized);
  CHECK(sol.assignment == std::vector<int>{0, 0});
  CHECK(sol.objective == doctest::Approx(0.0));
  CHECK(sol.feasible);
}

TEST_CASE("single-class instance picks the largest feasible count") {
  KnapsackInstance inst;
  inst.capacity = 3;
  inst.tau = 2.0;
  inst.classes = {ClassicClass{1, 1.0, 5}};
  const Solution sol = solve_knapsack(inst, Mode::Linear);
  CHECK(sol.assignment == std::vector<int>{3});
  CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("objective applies the outer constraint to the total weight") {
  KnapsackInstance inst = two_item_instance();
  inst.outer = OuterConstraint{OuterConstraint::Polynomial{{0, 0, 1}}};  // F(z) = z^2
  CHECK(objective(inst, {1, 0}).feasible);        // 2^2 = 4 <= 4
  CHECK_FALSE(objective(inst, {0, 1}).feasible);  // 3^2 = 9 > 4
  const Solution sol = solve_knapsack(inst, Mode::LogStabilized);
  CHECK(sol.assignment == std::vector<int>{1, 0});
  CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("tabulated classes reproduce classic transitions bit for bit") {
  KnapsackInstance classic;
  classic.capacity = 7;
  classic.tau = 1.3;
  classic.classes = {ClassicClass{2, 1.5, 3}, ClassicClass{1, 0.5, 2}, ClassicClass{3, 2.0, 1}};
  KnapsackInstance tab = classic;
  for (auto& cls : tab.classes) {
    const auto& c = std::get<ClassicClass>(cls);
    TabulatedClass t;
    for (int y = 0; y <= c.count; ++y) {
      t.weights.push_back(c.weight * y);
      t.values.push_back(c.value * y);
    }
    cls = std::move(t);
  }
  const SparseTransition h1 = build_head(classic, 0, {});
  const SparseTransition h2 = build_head(tab, 0, {});
  REQUIRE(h1.nnz() == h2.nnz());
  for (std::int64_t i = 0; i < h1.nnz(); ++i) {
    CHECK(h1.entries[i].row == h2.entries[i].row);
    CHECK(h1.entries[i].col == h2.entries[i].col);
    CHECK(h1.entries[i].exponent == h2.entries[i].exponent);
  }
  const SparseTransition m1 = build_middle(classic, 1);
  const SparseTransition m2 = build_middle(tab, 1);
  REQUIRE(m1.nnz() == m2.nnz());
  for (std::int64_t i = 0; i < m1.nnz(); ++i)
    CHECK(m1.entries[i].exponent == m2.entries[i].exponent);
  CHECK(solve_knapsack(classic, Mode::LogStabilized).assignment ==
        solve_knapsack(tab, Mode::LogStabilized).assignment);
}

TEST_CASE("bounded classes agree with their 0-1 expansion") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    KnapsackGenParams p;
    p.num_classes = 4;
    p.max_count = 3;
    p.max_weight = 5;
    KnapsackInstance inst = gen_knapsack(p, seed);
    inst.tau = 5000.0;
    KnapsackInstance expanded;
    expanded.capacity = inst.capacity;
    expanded.tau = inst.tau;
    for (const auto& cls : inst.classes) {
      const auto& c = std::get<ClassicClass>(cls);
      for (int j = 0; j < c.count; ++j)
        expanded.classes.push_back(ClassicClass{c.weight, c.value, 1});
    }
    const Solution a = solve_knapsack(inst, Mode::LogStabilized);
    const Solution b = solve_knapsack(expanded, Mode::LogStabilized);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
  }
}

TEST_CASE("log mode at large tau recovers the exact optimum") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 40 && checked < 20; ++seed) {
    KnapsackGenParams p;
    p.num_classes = 8;
    p.max_count = 3;
    p.max_weight = 8;
    KnapsackInstance inst = gen_knapsack(p, seed);
    inst.tau = 2000.0;
    const DpResult dp = dp_knapsack(inst);
    if (dp.optimum_multiplicity != 1) continue;  // ties make argmax order-dependent
    ++checked;
    const Solution sol = solve_knapsack(inst, Mode::LogStabilized);
    CHECK(sol.objective == doctest::Approx(dp.optimal_value).epsilon(1e-9));
    CHECK(sol.assignment == dp.assignment);
  }
  CHECK(checked >= 10);
}

TEST_CASE("cached and uncached knapsack runs agree exactly") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    KnapsackGenParams p;
    p.num_classes = 7;
    p.max_count = 2;
    KnapsackInstance inst = gen_knapsack(p, seed);
    inst.tau = 5.0;
    for (Mode mode : {Mode::Linear, Mode::LogStabilized}) {
      const Solution a = solve_knapsack(inst, mode, true);
      const Solution b = solve_knapsack(inst, mode, false);
      CHECK(a.assignment == b.assignment);
    }
  }
}

TEST_CASE("suggested tau keeps linear mode finite") {
  KnapsackGenParams p;
  p.num_classes = 40;
  p.max_count = 2;
  KnapsackInstance inst = gen_knapsack(p, 5);
  inst.tau = suggest_tau(inst, Mode::Linear);
  const Solution sol = solve_knapsack(inst, Mode::Linear);
  CHECK_FALSE(sol.numeric.saturated);
}

TEST_CASE("instance validation rejects malformed data") {
  KnapsackInstance neg;
  neg.capacity = 4;
  neg.classes = {ClassicClass{-2, 1.0, 1}};
  CHECK_THROWS_WITH_AS(neg.validate(),
                       "weights must be non-negative integers; rescale real weights",
                       std::invalid_argument);

  KnapsackInstance tab;
  tab.capacity = 4;
  tab.classes = {TabulatedClass{{1, 2}, {0.0, 1.0}}};  // w[0] != 0
  CHECK_THROWS_AS(tab.validate(), std::invalid_argument);

  KnapsackInstance shrink = two_item_instance();
  shrink.outer = OuterConstraint{OuterConstraint::Polynomial{{0}}};  // F(z) = 0 < z
  CHECK_THROWS_AS(shrink.validate(), std::invalid_argument);

  KnapsackInstance bad_tau = two_item_instance();
  bad_tau.tau = -1.0;
  CHECK_THROWS_AS(bad_tau.validate(), std::invalid_argument);
  bad_tau.tau = 0.0;  // tau = 0 is legal: amplitudes become feasibility counts
  CHECK_NOTHROW(bad_tau.validate());
}

TEST_CASE("polynomial constraints saturate instead of overflowing") {
  OuterConstraint f{OuterConstraint::Polynomial{{1, 0, 2}}};  // 1 + 2 z^2
  CHECK(f.eval(0) == 1);
  CHECK(f.eval(3) == 19);
  CHECK(f.eval(std::int64_t{1} << 40) > (std::int64_t{1} << 55));  // clamped, not negative
  OuterConstraint table{OuterConstraint::Tabulated{{0, 2, 4}}};
  CHECK(table.eval(1) == 2);
  CHECK(table.eval(5) > 1000);  // beyond the table: treated as infeasible
}
