#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pbursts::tools {

struct OptimizeOptions {
  std::string graph_path;
  int districts = 0;
  std::string scores = "neg_max_pop_deviation,min_polsby_popper";
  int burst_size = 10;
  int bursts = 200;
  std::uint64_t seed = 1;
  std::string init_path;  // empty: generate a seed plan
  double pop_tolerance = 0.10;
  std::string out_dir;
  int replications = 1;  // replication r runs with seed + r
  bool parallel = false;
  int trace_every = 1;       // checkpoint interval for the trace CSV
  std::string baseline_csv;  // optional overlay points for the SVG
};

struct BaselineOptions {
  std::string graph_path;
  int districts = 0;
  std::string scores = "neg_max_pop_deviation,min_polsby_popper";
  int steps = 1000;
  std::uint64_t seed = 1;
  std::string init_path;
  double pop_tolerance = 0.10;
  std::string out_dir;
};

struct SweepOptions {
  std::string graph_path;
  int districts = 0;
  std::string scores = "neg_max_pop_deviation,min_polsby_popper";
  std::vector<int> burst_sizes = {5, 10, 20};
  int replications = 10;
  int bursts = 200;
  std::uint64_t seed = 1;
  double pop_tolerance = 0.10;
  std::string out_dir;
  bool parallel = false;
};

struct ScalingOptions {
  std::vector<int> sample_counts = {1000};
  std::vector<int> dims = {2};
  int replications = 20;
  std::uint64_t seed = 1;
  std::string out_dir;
};

// Each returns a process exit code (0 on success) and writes its artifacts
// plus a manifest into the output directory.
int run_optimize(const OptimizeOptions& options);
int run_baseline(const BaselineOptions& options);
int run_burst_size_sweep(const SweepOptions& options);
int run_frontier_scaling(const ScalingOptions& options);

}  // namespace pbursts::tools
