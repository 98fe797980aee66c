#include "pbursts/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace pbursts::io {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << content;
  if (!out) throw std::runtime_error(fmt::format("write failed for {}", path.string()));
}

std::string score_header(int criteria, const char* index_column) {
  std::string header = index_column;
  for (int j = 1; j <= criteria; ++j) header += fmt::format(",score_{}", j);
  header += "\n";
  return header;
}

}  // namespace

AdjacencyGraph load_graph(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(fmt::format("graph parse failure in {}: {}", path.string(), e.what()));
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges")) {
    throw std::runtime_error("graph JSON must contain \"nodes\" and \"edges\" arrays");
  }
  std::vector<Node> nodes;
  for (const auto& jn : doc.at("nodes")) {
    Node n;
    n.id = jn.at("id").get<int>();
    const auto& pop = jn.at("pop");
    if (!pop.is_number_integer()) {
      throw std::runtime_error(fmt::format("population must be an integer at node {}", n.id));
    }
    n.pop = pop.get<std::int64_t>();
    n.area = jn.at("area").get<double>();
    n.boundary_perim = jn.at("boundary_perim").get<double>();
    nodes.push_back(n);
  }
  std::vector<Edge> edges;
  for (const auto& je : doc.at("edges")) {
    edges.push_back(Edge{je.at("a").get<int>(), je.at("b").get<int>(),
                         je.at("shared_perim").get<double>()});
  }
  return AdjacencyGraph(std::move(nodes), std::move(edges));
}

void save_graph(const AdjacencyGraph& graph, const std::filesystem::path& path) {
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const Node& n : graph.nodes()) {
    doc["nodes"].push_back({{"id", n.id},
                            {"pop", n.pop},
                            {"area", n.area},
                            {"boundary_perim", n.boundary_perim}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : graph.edges()) {
    doc["edges"].push_back({{"a", e.a}, {"b", e.b}, {"shared_perim", e.shared_perim}});
  }
  write_file(path, doc.dump(2) + "\n");
}

Plan load_plan_csv(const std::filesystem::path& path, const AdjacencyGraph& graph,
                   int districts) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "node_id,district") {
    throw std::runtime_error(
        fmt::format("{}: expected header \"node_id,district\"", path.string()));
  }
  const int n = graph.node_count();
  Plan plan;
  plan.assignment.assign(static_cast<std::size_t>(n), 0);
  plan.district_count = districts;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(fmt::format("{}:{}: malformed row", path.string(), row));
    }
    int node = 0;
    int district = 0;
    try {
      node = std::stoi(line.substr(0, comma));
      district = std::stoi(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::runtime_error(fmt::format("{}:{}: malformed row", path.string(), row));
    }
    if (node < 0 || node >= n) {
      throw std::runtime_error(fmt::format("{}:{}: unknown node {}", path.string(), row, node));
    }
    if (seen[static_cast<std::size_t>(node)]) {
      throw std::runtime_error(fmt::format("{}:{}: duplicate node {}", path.string(), row, node));
    }
    seen[static_cast<std::size_t>(node)] = 1;
    plan.assignment[static_cast<std::size_t>(node)] = district;
  }
  for (int v = 0; v < n; ++v) {
    if (!seen[static_cast<std::size_t>(v)]) {
      throw std::runtime_error(fmt::format("{}: node {} has no assignment", path.string(), v));
    }
  }
  validate_plan(graph, plan);
  return plan;
}

void save_plan_csv(const Plan& plan, const std::filesystem::path& path) {
  std::string out = "node_id,district\n";
  for (std::size_t v = 0; v < plan.assignment.size(); ++v) {
    out += fmt::format("{},{}\n", v, plan.assignment[v]);
  }
  write_file(path, out);
}

void write_frontier_json(const FrontierArchive<Plan>& archive,
                         const nlohmann::ordered_json& config,
                         const std::filesystem::path& path) {
  nlohmann::ordered_json doc;
  doc["config"] = config;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& entry : archive.entries()) {
    doc["entries"].push_back({{"scores", entry.scores},
                              {"burst_found", entry.burst_found},
                              {"assignment", entry.state.assignment}});
  }
  write_file(path, doc.dump(2) + "\n");
}

FrontierFile read_frontier_json(const std::filesystem::path& path) {
  const auto doc = nlohmann::ordered_json::parse(read_file(path));
  FrontierFile file;
  file.config = doc.at("config");
  const int districts = file.config.value("districts", 0);
  for (const auto& je : doc.at("entries")) {
    FrontierEntry<Plan> entry;
    entry.scores = je.at("scores").get<ScoreVector>();
    entry.burst_found = je.at("burst_found").get<int>();
    entry.state.assignment = je.at("assignment").get<std::vector<int>>();
    entry.state.district_count = districts;
    file.entries.push_back(std::move(entry));
  }
  return file;
}

void write_trace_csv(const std::vector<TraceCheckpoint>& checkpoints, int criteria,
                     const std::filesystem::path& path) {
  std::string out = score_header(criteria, "burst");
  for (const TraceCheckpoint& cp : checkpoints) {
    for (const ScoreVector& v : cp.scores) {
      out += fmt::format("{}", cp.burst);
      for (const double x : v) out += fmt::format(",{}", x);
      out += "\n";
    }
  }
  write_file(path, out);
}

void write_baseline_csv(const std::vector<ScoreVector>& scores, int criteria,
                        const std::filesystem::path& path) {
  std::string out = score_header(criteria, "step");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out += fmt::format("{}", i);
    for (const double x : scores[i]) out += fmt::format(",{}", x);
    out += "\n";
  }
  write_file(path, out);
}

std::vector<ScoreVector> read_score_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(fmt::format("{}: empty CSV", path.string()));
  }
  std::vector<ScoreVector> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ScoreVector row;
    std::size_t pos = line.find(',');  // skip the index column
    while (pos != std::string::npos) {
      const std::size_t next = line.find(',', pos + 1);
      row.push_back(std::stod(line.substr(pos + 1, next == std::string::npos
                                                       ? std::string::npos
                                                       : next - pos - 1)));
      pos = next;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string file_digest(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return fmt::format("fnv1a64:{:016x}", hash);
}

}  // namespace pbursts::io
