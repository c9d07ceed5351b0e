#ifndef TN_IO_HPP
#define TN_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tn/knapsack.hpp"
#include "tn/oracles.hpp"
#include "tn/shortest_path.hpp"

namespace tn {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Knapsack instances are JSON documents:
///   {"capacity": Q, "tau": t,
///    "classes": [{"w": 2, "v": 3.0, "c": 1} | {"weights": [...], "values": [...]}, ...],
///    "outer": {"poly": [a0, a1, ...]}}   (optional)
std::string serialize_instance(const KnapsackInstance& instance);
KnapsackInstance parse_instance(const std::string& text);

/// Graphs are edge-list text: a header line `V <count> directed|undirected`
/// followed by one `src dst cost` record per line. Time-dependent problems
/// are a sequence of such blocks separated by `--- step t` lines.
std::string serialize_graphs(const std::vector<Graph>& snapshots);
std::vector<Graph> parse_graphs(const std::string& text);

/// True when the text looks like a knapsack JSON document rather than an
/// edge-list graph.
bool looks_like_knapsack(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Machine-readable result documents (JSON on stdout).
std::string solution_to_json(const Solution& solution, const std::string& kind, Mode mode,
                             bool cached, double tau);
std::string comparison_to_json(const ComparisonReport& report, const std::string& baseline);

}  // namespace tn

#endif  // TN_IO_HPP
