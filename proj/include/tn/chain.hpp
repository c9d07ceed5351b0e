#ifndef TN_CHAIN_HPP
#define TN_CHAIN_HPP

#include <chrono>
#include <limits>
#include <vector>

#include "tn/numerics.hpp"
#include "tn/sparse_transition.hpp"

namespace tn {

/// Abstract one-dimensional tensor chain, implemented by each solver
/// front-end.
///
/// The chain has N = num_variables() qudits decimated in order 0..N-1.
/// For each variable m, the projected amplitude vector is
///
///   psi^m = head_transition(m, prefix) . tails[m+1]        (m <  N-1)
///   psi^m = head_transition(m, prefix) . final_vector()    (m == N-1)
///
/// where tails[k] is the cached bottom-up contraction of everything the
/// head of variable k-1 connects to:
///
///   tails[N-1] = terminal_vector()
///   tails[k]   = middle_transition(k) . tails[k+1]         (1 <= k <= N-2)
///
/// Head tensors depend on the already-fixed prefix; the cached tails never
/// do, which is what makes the backward sweep reusable across decimation
/// steps.
class ChainProblem {
 public:
  virtual ~ChainProblem() = default;

  virtual int num_variables() const = 0;
  virtual int domain_size(int m) const = 0;

  /// Head tensor for variable m, shape domain_size(m) x (columns of the
  /// vector it contracts with). Depends only on m and the fixed prefix.
  virtual SparseTransition head_transition(int m, const std::vector<int>& prefix) const = 0;

  /// Middle tensor at chain position k, 1 <= k <= N-2.
  virtual SparseTransition middle_transition(int k) const = 0;

  /// Bottom-most cached vector (tails[N-1]). Only called when N >= 2.
  virtual AmplitudeVector terminal_vector(Mode mode) const = 0;

  /// Vector closing the chain below the last head.
  virtual AmplitudeVector final_vector(Mode mode) const = 0;

  /// Exact objective of a full assignment, recomputed from instance data.
  /// NaN when the front-end computes it outside the engine.
  virtual double exact_objective(const std::vector<int>&) const {
    return std::numeric_limits<double>::quiet_NaN();
  }
};

/// Cached intermediate vectors from the backward sweep.
struct ChainCache {
  Mode mode = Mode::Linear;
  std::vector<AmplitudeVector> tails;  // tails[k] valid for 1 <= k <= N-1
  AmplitudeVector final_vec;
  NumericReport numeric;
};

struct Solution {
  std::vector<int> assignment;
  double objective = std::numeric_limits<double>::quiet_NaN();
  bool feasible = false;
  NumericReport numeric;
  std::vector<double> per_variable_margins;  // log gap best vs second best
  std::chrono::duration<double> elapsed{0.0};
};

struct EngineOptions {
  /// Log-magnitude ceiling above which LogStabilized mode reports
  /// saturation. Linear mode saturates on any non-finite amplitude.
  double log_ceiling = std::numeric_limits<double>::infinity();
};

ChainCache backward_sweep(const ChainProblem& problem, Mode mode,
                          const EngineOptions& opts = {});

/// Projected amplitude vector for variable m given a fixed prefix of
/// length m. Exposed so tests can compare it against brute-force oracles.
AmplitudeVector psi_vector(const ChainProblem& problem, const ChainCache& cache, int m,
                           const std::vector<int>& prefix);

/// Fix variables one at a time by argmax over psi^m, reusing the cache.
Solution decimate(const ChainProblem& problem, ChainCache& cache,
                  const EngineOptions& opts = {});

/// Same decisions as backward_sweep + decimate, recontracting the chain
/// from the bottom at every step instead of caching.
Solution solve_uncached(const ChainProblem& problem, Mode mode,
                        const EngineOptions& opts = {});

}  // namespace tn

#endif  // TN_CHAIN_HPP
