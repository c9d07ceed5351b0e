#include "tn/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tn {

using nlohmann::json;

namespace {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json class_to_json(const KnapsackClass& cls) {
  if (const auto* c = std::get_if<ClassicClass>(&cls))
    return json{{"w", c->weight}, {"v", c->value}, {"c", c->count}};
  const auto& t = std::get<TabulatedClass>(cls);
  return json{{"weights", t.weights}, {"values", t.values}};
}

KnapsackClass class_from_json(const json& j) {
  if (j.contains("weights")) {
    TabulatedClass t;
    t.weights = j.at("weights").get<std::vector<std::int64_t>>();
    t.values = j.at("values").get<std::vector<double>>();
    return t;
  }
  ClassicClass c;
  c.weight = j.at("w").get<std::int64_t>();
  c.value = j.at("v").get<double>();
  c.count = j.at("c").get<int>();
  return c;
}

}  // namespace

std::string serialize_instance(const KnapsackInstance& instance) {
  json j;
  j["capacity"] = instance.capacity;
  j["tau"] = instance.tau;
  j["classes"] = json::array();
  for (const auto& cls : instance.classes) j["classes"].push_back(class_to_json(cls));
  if (instance.outer) {
    if (const auto* poly = std::get_if<OuterConstraint::Polynomial>(&instance.outer->kind))
      j["outer"] = json{{"poly", poly->coefficients}};
    else
      j["outer"] = json{{"table", std::get<OuterConstraint::Tabulated>(instance.outer->kind).table}};
  }
  return j.dump(2) + "\n";
}

KnapsackInstance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance parse error: ") + e.what());
  }
  try {
    KnapsackInstance inst;
    inst.capacity = j.at("capacity").get<std::int64_t>();
    inst.tau = j.at("tau").get<double>();
    for (const auto& cj : j.at("classes")) inst.classes.push_back(class_from_json(cj));
    if (j.contains("outer")) {
      OuterConstraint outer;
      if (j["outer"].contains("poly"))
        outer.kind = OuterConstraint::Polynomial{
            j["outer"]["poly"].get<std::vector<std::int64_t>>()};
      else
        outer.kind = OuterConstraint::Tabulated{
            j["outer"].at("table").get<std::vector<std::int64_t>>()};
      inst.outer = std::move(outer);
    }
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance field error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

std::string serialize_graphs(const std::vector<Graph>& snapshots) {
  std::ostringstream out;
  for (std::size_t t = 0; t < snapshots.size(); ++t) {
    if (t > 0) out << "--- step " << t << "\n";
    const Graph& g = snapshots[t];
    out << "V " << g.vertex_count() << (g.directed() ? " directed" : " undirected") << "\n";
    for (int i = 0; i < g.vertex_count(); ++i) {
      for (const auto& [j, cost] : g.neighbors(i)) {
        if (j == i) continue;  // implicit self-loop
        if (!g.directed() && j < i) continue;
        out << i << " " << j << " " << format_real(cost) << "\n";
      }
    }
  }
  return out.str();
}

std::vector<Graph> parse_graphs(const std::string& text) {
  std::vector<Graph> snapshots;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int vertex_count = 0;
  bool directed = true;
  auto fail = [&](const std::string& msg) {
    throw ParseError("graph line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    if (tok == "---") {
      have_header = false;
      continue;
    }
    if (tok == "V") {
      std::string dir;
      if (!(ls >> vertex_count >> dir)) fail("expected `V <count> directed|undirected`");
      if (dir != "directed" && dir != "undirected") fail("unknown directionality `" + dir + "`");
      if (vertex_count < 1) fail("vertex count must be positive");
      if (!snapshots.empty() && snapshots.front().vertex_count() != vertex_count)
        fail("snapshot vertex count mismatch");
      directed = dir == "directed";
      snapshots.emplace_back(vertex_count, directed);
      have_header = true;
      continue;
    }
    if (!have_header) fail("edge record before header line");
    int src = 0, dst = 0;
    double cost = 0.0;
    std::istringstream es(line);
    if (!(es >> src >> dst >> cost)) fail("expected `src dst cost`");
    try {
      snapshots.back().add_edge(src, dst, cost);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (snapshots.empty()) throw ParseError("graph file has no header line");
  return snapshots;
}

bool looks_like_knapsack(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

std::string solution_to_json(const Solution& solution, const std::string& kind, Mode mode,
                             bool cached, double tau) {
  json j;
  j["kind"] = kind;
  j[kind == "path" ? "path" : "assignment"] = solution.assignment;
  j["objective"] = solution.objective;
  j["feasible"] = solution.feasible;
  j["margins"] = solution.per_variable_margins;
  j["numeric"] = {{"saturated", solution.numeric.saturated},
                  {"max_log_magnitude", solution.numeric.max_log_magnitude},
                  {"nonfinite_count", solution.numeric.nonfinite_count}};
  j["elapsed_seconds"] = solution.elapsed.count();
  j["mode"] = mode == Mode::Linear ? "linear" : "log";
  j["cached"] = cached;
  j["tau"] = tau;
  return j.dump(2) + "\n";
}

std::string comparison_to_json(const ComparisonReport& report, const std::string& baseline) {
  json j;
  j["baseline"] = baseline;
  j["tn_objective"] = report.tn_objective;
  j["baseline_objective"] = report.baseline_objective;
  j["relative_error"] = report.relative_error;
  j["tn_seconds"] = report.tn_time.count();
  j["baseline_seconds"] = report.baseline_time.count();
  j["agree"] = report.agree;
  return j.dump(2) + "\n";
}

}  // namespace tn
