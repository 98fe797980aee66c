#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbursts/graph.hpp"
#include "pbursts/pareto.hpp"

namespace pbursts::io {

// Graph JSON:
//   {"nodes":[{"id":0,"pop":100,"area":1.0,"boundary_perim":2.0},...],
//    "edges":[{"a":0,"b":1,"shared_perim":1.0},...]}
// Parsing and validation errors name the offending element.
AdjacencyGraph load_graph(const std::filesystem::path& path);
void save_graph(const AdjacencyGraph& graph, const std::filesystem::path& path);

// Plan CSV: header "node_id,district", one row per node, districts 1..m.
// Loading checks coverage of every node and full plan validity against the
// graph (labels 1..m all used, every district contiguous).
Plan load_plan_csv(const std::filesystem::path& path, const AdjacencyGraph& graph,
                   int districts);
void save_plan_csv(const Plan& plan, const std::filesystem::path& path);

// Frontier JSON:
//   {"config":{...},"entries":[{"scores":[...],"burst_found":17,"assignment":[...]}]}
// `config` is the resolved run configuration; entries keep archive order.
void write_frontier_json(const FrontierArchive<Plan>& archive,
                         const nlohmann::ordered_json& config,
                         const std::filesystem::path& path);

struct FrontierFile {
  nlohmann::ordered_json config;
  std::vector<FrontierEntry<Plan>> entries;
};
FrontierFile read_frontier_json(const std::filesystem::path& path);

// One archive snapshot per checkpoint burst.
struct TraceCheckpoint {
  int burst = 0;
  std::vector<ScoreVector> scores;
};

// Score trace CSV: header "burst,score_1,...,score_J",
// one row per archive entry per checkpoint.
void write_trace_csv(const std::vector<TraceCheckpoint>& checkpoints, int criteria,
                     const std::filesystem::path& path);

// Baseline score CSV: header "step,score_1,...,score_J", one row per visited
// state.
void write_baseline_csv(const std::vector<ScoreVector>& scores, int criteria,
                        const std::filesystem::path& path);
std::vector<ScoreVector> read_score_csv(const std::filesystem::path& path);

// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<hex>". Recorded in
// run manifests to pin the exact inputs.
std::string file_digest(const std::filesystem::path& path);

}  // namespace pbursts::io
