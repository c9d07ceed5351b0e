#ifndef TN_SHORTEST_PATH_HPP
#define TN_SHORTEST_PATH_HPP

#include <optional>
#include <vector>

#include "tn/chain.hpp"

namespace tn {

/// Directed or undirected graph with non-negative real edge costs.
/// E_ii = 0 always holds as an implicit self-loop; an absent pair (i, j)
/// means E_ij = infinity and produces no transition entry.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, bool directed);

  int vertex_count() const { return vertex_count_; }
  bool directed() const { return directed_; }

  /// Adds an edge (both orientations when undirected). Re-adding an edge
  /// overwrites its cost. Self-loops must have cost zero.
  void add_edge(int src, int dst, double cost);

  /// Cost of (i, j), or nullopt when the vertices are not connected.
  /// (i, i) is always 0.
  std::optional<double> edge_cost(int i, int j) const;

  /// Outgoing neighbors including the implicit self-loop, sorted by vertex.
  const std::vector<std::pair<int, double>>& neighbors(int i) const;

  /// Distinct edges including implicit self-loops.
  std::int64_t edge_entry_count() const;

 private:
  int vertex_count_ = 0;
  bool directed_ = true;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;  // self-loop included
  void insert(int src, int dst, double cost);
};

/// n-step single-pair path problem; `snapshots` holds one graph for the
/// static case or n-1 per-step graphs for the time-dependent case.
struct PathProblem {
  std::vector<Graph> snapshots;
  int origin = 0;
  int destination = 0;
  int steps = 2;  // n: number of visited vertices o = v_0 .. v_{n-1} = d
  double tau = 1.0;

  bool time_dependent() const { return snapshots.size() > 1; }
  int vertex_count() const { return snapshots.front().vertex_count(); }
  const Graph& snapshot(int t) const {
    return time_dependent() ? snapshots[t] : snapshots.front();
  }
  void validate() const;
};

/// Head tensor M^m (1 <= m <= n-2): entry (i, j) with exponent
/// -tau (E^{m-1}_{p i} + E^m_{i j}), present iff both edges exist.
SparseTransition build_head_sp(const PathProblem& problem, int m, int previous_vertex);

/// Middle tensor K^k: one entry per existing edge of snapshot k plus
/// self-loops.
SparseTransition build_middle_sp(const PathProblem& problem, int k);

/// Tail vector: entry i = sum_j e^{-tau (E^{n-3}_{i j} + E^{n-2}_{j d})}
/// over j where both edges exist (the last two snapshots).
AmplitudeVector build_terminal_sp(const PathProblem& problem, Mode mode);

struct PathCost {
  double cost = 0.0;
  bool feasible = false;
};

PathCost path_cost(const PathProblem& problem, const std::vector<int>& path);

/// ChainProblem over the decimated vertices v_1 .. v_{n-3}; v_{n-2} is
/// marginalized inside the terminal vector and reconstructed by a final
/// argmax in solve_path. Requires steps >= 4.
class PathChain final : public ChainProblem {
 public:
  explicit PathChain(const PathProblem& problem);

  int num_variables() const override { return problem_.steps - 3; }
  int domain_size(int) const override { return problem_.vertex_count(); }
  SparseTransition head_transition(int m, const std::vector<int>& prefix) const override;
  SparseTransition middle_transition(int k) const override;
  AmplitudeVector terminal_vector(Mode mode) const override;
  AmplitudeVector final_vector(Mode mode) const override;

 private:
  const PathProblem& problem_;
};

/// Returns the full explicit walk v_0 = o, ..., v_{n-1} = d in
/// Solution.assignment with its exact cost as the objective.
Solution solve_path(const PathProblem& problem, Mode mode, bool cached = true,
                    const EngineOptions& opts = {});

}  // namespace tn

#endif  // TN_SHORTEST_PATH_HPP
