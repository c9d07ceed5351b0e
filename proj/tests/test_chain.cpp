#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "tn/chain.hpp"

using namespace tn;

namespace {

/// Minimal concrete chain for engine-level tests: binary variables, the
/// contracted state is the running parity of the choices, and variable m
/// contributes exponent vals[m][x]. Every amplitude is then
/// e^{sum of chosen vals}, which a test can recompute by enumeration.
struct ParityChain : ChainProblem {
  std::vector<std::array<double, 2>> vals;

  explicit ParityChain(std::vector<std::array<double, 2>> v) : vals(std::move(v)) {}

  int num_variables() const override { return static_cast<int>(vals.size()); }
  int domain_size(int) const override { return 2; }

  static int parity(const std::vector<int>& prefix) {
    int p = 0;
    for (int x : prefix) p ^= x & 1;
    return p;
  }

  SparseTransition head_transition(int m, const std::vector<int>& prefix) const override {
    SparseTransition t(2, 2);
    const int p = parity(prefix);
    for (int x = 0; x < 2; ++x) t.add(x, (p + x) % 2, vals[m][x]);
    t.finalize();
    return t;
  }

  SparseTransition middle_transition(int k) const override {
    SparseTransition t(2, 2);
    for (int p = 0; p < 2; ++p)
      for (int x = 0; x < 2; ++x) t.add(p, (p + x) % 2, vals[k][x]);
    t.finalize();
    return t;
  }

  AmplitudeVector terminal_vector(Mode mode) const override {
    AmplitudeVector v(mode, 2);
    const int last = num_variables() - 1;
    for (int p = 0; p < 2; ++p) {
      Amplitude acc = amp_zero(mode);
      for (int x = 0; x < 2; ++x) acc = amp_add(acc, amp_from_exponent(vals[last][x], mode));
      v.values[p] = acc.value;
    }
    return v;
  }

  AmplitudeVector final_vector(Mode mode) const override {
    AmplitudeVector v(mode, 2);
    for (int p = 0; p < 2; ++p) v.values[p] = mode == Mode::Linear ? 1.0 : 0.0;
    return v;
  }
};

/// Brute-force psi: sum of e^{suffix vals} per choice of variable m.
std::vector<double> brute_psi(const ParityChain& chain, int m) {
  const int n = chain.num_variables();
  std::vector<double> out(2, 0.0);
  const int suffix = n - m - 1;
  for (int x = 0; x < 2; ++x) {
    for (int bits = 0; bits < (1 << suffix); ++bits) {
      double e = chain.vals[m][x];
      for (int i = 0; i < suffix; ++i) e += chain.vals[m + 1 + i][(bits >> i) & 1];
      out[x] += std::exp(e);
    }
  }
  return out;
}

ParityChain random_chain(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<std::array<double, 2>> vals;
  for (int i = 0; i < n; ++i) vals.push_back({d(gen), d(gen)});
  return ParityChain(std::move(vals));
}

}  // namespace

TEST_CASE("psi_vector equals the brute-force suffix sum") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const ParityChain chain = random_chain(5, seed);
    for (Mode mode : {Mode::Linear, Mode::LogStabilized}) {
      ChainCache cache = backward_sweep(chain, mode);
      std::vector<int> prefix;
      for (int m = 0; m < 5; ++m) {
        const AmplitudeVector psi = psi_vector(chain, cache, m, prefix);
        const std::vector<double> expect = brute_psi(chain, m);
        for (int x = 0; x < 2; ++x) {
          const double got = mode == Mode::Linear ? psi.values[x] : std::exp(psi.values[x]);
          CHECK(got == doctest::Approx(expect[x]).epsilon(1e-10));
        }
        prefix.push_back(expect[1] > expect[0] ? 1 : 0);
      }
    }
  }
}

TEST_CASE("decimation fixes each variable at the brute-force argmax") {
  const ParityChain chain = random_chain(6, 99);
  ChainCache cache = backward_sweep(chain, Mode::LogStabilized);
  const Solution sol = decimate(chain, cache, {});
  // With no interaction between variables the greedy argmax is just the
  // per-variable maximum.
  for (int m = 0; m < 6; ++m)
    CHECK(sol.assignment[m] == (chain.vals[m][1] > chain.vals[m][0] ? 1 : 0));
  CHECK(sol.per_variable_margins.size() == 6);
  for (int m = 0; m < 6; ++m)
    CHECK(sol.per_variable_margins[m] ==
          doctest::Approx(std::abs(chain.vals[m][1] - chain.vals[m][0])).epsilon(1e-9));
}

TEST_CASE("cached and uncached runs make bit-identical decisions") {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    const ParityChain chain = random_chain(7, seed);
    for (Mode mode : {Mode::Linear, Mode::LogStabilized}) {
      ChainCache cache = backward_sweep(chain, mode);
      const Solution cached = decimate(chain, cache, {});
      const Solution uncached = solve_uncached(chain, mode, {});
      CHECK(cached.assignment == uncached.assignment);
      REQUIRE(cached.per_variable_margins.size() == uncached.per_variable_margins.size());
      for (std::size_t i = 0; i < cached.per_variable_margins.size(); ++i)
        CHECK(cached.per_variable_margins[i] == uncached.per_variable_margins[i]);
    }
  }
}

TEST_CASE("backward sweep caches one tail per interior position") {
  const ParityChain chain = random_chain(8, 5);
  ChainCache cache = backward_sweep(chain, Mode::Linear);
  REQUIRE(cache.tails.size() == 8);
  for (int k = 1; k <= 7; ++k) CHECK(cache.tails[k].size() == 2);
  // The cache is read-only during decimation: two runs agree exactly.
  const Solution a = decimate(chain, cache, {});
  const Solution b = decimate(chain, cache, {});
  CHECK(a.assignment == b.assignment);
}

TEST_CASE("single-variable chain contracts head against the final vector") {
  const ParityChain chain({{1.0, 3.0}});
  ChainCache cache = backward_sweep(chain, Mode::Linear);
  const AmplitudeVector psi = psi_vector(chain, cache, 0, {});
  CHECK(psi.values[0] == doctest::Approx(std::exp(1.0)));
  CHECK(psi.values[1] == doctest::Approx(std::exp(3.0)));
  const Solution sol = decimate(chain, cache, {});
  CHECK(sol.assignment == std::vector<int>{1});
}

namespace {

/// Chain whose head has no entries at all: every completion is forbidden.
struct DeadChain final : ParityChain {
  using ParityChain::ParityChain;
  SparseTransition head_transition(int, const std::vector<int>&) const override {
    SparseTransition t(2, 2);
    t.finalize();
    return t;
  }
};

}  // namespace

TEST_CASE("an all-zero psi raises NoFeasibleError") {
  const DeadChain chain({{0.0, 0.0}, {0.0, 0.0}});
  ChainCache cache = backward_sweep(chain, Mode::LogStabilized);
  CHECK_THROWS_AS(decimate(chain, cache, {}), NoFeasibleError);
  CHECK_THROWS_AS(solve_uncached(chain, Mode::Linear, {}), NoFeasibleError);
}
