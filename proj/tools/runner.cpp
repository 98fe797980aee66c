#include "runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "pbursts/io.hpp"
#include "pbursts/oracle.hpp"
#include "pbursts/pareto.hpp"
#include "pbursts/recom.hpp"
#include "pbursts/version.hpp"
#include "svg.hpp"

namespace pbursts::tools {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

int worker_count(bool parallel, int jobs) {
  if (!parallel) return 1;
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PARETO_BURSTS_THREADS")) {
    const int limit = std::atoi(env);
    if (limit >= 1) cap = std::min(cap, limit);
  }
  return std::max(1, std::min(cap, jobs));
}

// Runs `jobs` tasks on a bounded pool; each task owns its index exclusively.
template <typename Fn>
void run_pool(int jobs, int workers, Fn&& task) {
  if (workers <= 1) {
    for (int i = 0; i < jobs; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i; (i = next.fetch_add(1)) < jobs;) {
        try {
          task(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct ReplicationRun {
  FrontierArchive<Plan> archive;
  std::vector<io::TraceCheckpoint> trace;
  std::int64_t chain_steps = 0;
};

// One full optimization: seed (or load) the initial plan, then run the
// short-burst engine over the recombination chain.
ReplicationRun run_replication(const ProblemSpec& spec, const Plan& init, int burst_size,
                               int bursts, std::uint64_t seed, int trace_every) {
  ChainConfig chain_config;
  chain_config.pop_tolerance = spec.pop_tolerance;
  chain_config.rng_seed = seed;

  BurstConfig burst_config;
  burst_config.burst_size = burst_size;
  burst_config.max_bursts = bursts;
  burst_config.rng_seed = seed;

  ReplicationRun run;
  auto chain = [&spec, &chain_config, &run](const Plan& p, Rng& rng) {
    ++run.chain_steps;
    return recom_step(p, spec, chain_config, rng);
  };
  auto scorer = [&spec](const Plan& p) { return score(spec.graph, p, spec.score_spec); };
  auto observer = [&run, trace_every, bursts](int burst, const FrontierArchive<Plan>& archive) {
    if (burst % trace_every == 0 || burst == bursts) {
      run.trace.push_back(io::TraceCheckpoint{burst, archive.scores()});
    }
  };
  run.archive = pareto_short_bursts(std::vector<Plan>{init}, scorer, chain, burst_config,
                                    observer);
  return run;
}

ordered_json frontier_config(const OptimizeOptions& o, const ProblemSpec& spec,
                             std::uint64_t seed, int replication) {
  return ordered_json{{"graph", o.graph_path},
                      {"districts", spec.districts},
                      {"pop_tolerance", spec.pop_tolerance},
                      {"scores", criterion_names(spec.score_spec)},
                      {"burst_size", o.burst_size},
                      {"bursts", o.bursts},
                      {"seed", seed},
                      {"replication", replication}};
}

void write_plan_dir(const FrontierArchive<Plan>& archive, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < archive.entries().size(); ++i) {
    io::save_plan_csv(archive.entries()[i].state, dir / fmt::format("entry_{:03}.csv", i));
  }
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    ordered_json invocation, ordered_json inputs, ordered_json counters,
                    std::vector<std::string> outputs, double runtime_seconds, int threads) {
  ordered_json doc{{"command", command},
                   {"version", kVersion},
                   {"invocation", std::move(invocation)},
                   {"inputs", std::move(inputs)},
                   {"threads", threads},
                   {"counters", std::move(counters)},
                   {"outputs", std::move(outputs)},
                   {"runtime_seconds", runtime_seconds}};
  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  out << doc.dump(2) << "\n";
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ProblemSpec load_problem(const std::string& graph_path, int districts,
                         const std::string& scores, double pop_tolerance) {
  if (districts < 1) throw std::runtime_error("--districts must be >= 1");
  if (pop_tolerance < 0.0) throw std::runtime_error("--pop-tolerance must be >= 0");
  return ProblemSpec{io::load_graph(graph_path), districts, pop_tolerance,
                     parse_score_spec(scores)};
}

Plan initial_plan(const ProblemSpec& spec, const std::string& init_path, std::uint64_t seed) {
  if (init_path.empty()) return seed_plan(spec, seed);
  Plan plan = io::load_plan_csv(init_path, spec.graph, spec.districts);
  if (max_pop_deviation(spec.graph, plan) > spec.pop_tolerance) {
    throw std::runtime_error(
        fmt::format("initial plan violates the population tolerance {}", spec.pop_tolerance));
  }
  return plan;
}

}  // namespace

int run_optimize(const OptimizeOptions& options) {
  const Stopwatch watch;
  if (options.bursts < 0) throw std::runtime_error("--bursts must be >= 0");
  if (options.replications < 1) throw std::runtime_error("--replications must be >= 1");
  if (options.trace_every < 1) throw std::runtime_error("--trace-every must be >= 1");
  const ProblemSpec spec = load_problem(options.graph_path, options.districts, options.scores,
                                        options.pop_tolerance);
  const int criteria = spec.score_spec.size();
  const fs::path out_dir = options.out_dir;
  fs::create_directories(out_dir);

  const int reps = options.replications;
  std::vector<ReplicationRun> runs(static_cast<std::size_t>(reps));
  const int threads = worker_count(options.parallel, reps);
  run_pool(reps, threads, [&](int r) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(r);
    const Plan init = initial_plan(spec, options.init_path, seed);
    runs[static_cast<std::size_t>(r)] = run_replication(spec, init, options.burst_size,
                                                        options.bursts, seed, options.trace_every);
  });

  std::vector<ScoreVector> baseline_points;
  if (!options.baseline_csv.empty()) {
    baseline_points = io::read_score_csv(options.baseline_csv);
  }

  std::vector<std::string> outputs;
  std::int64_t total_steps = 0;
  const auto emit = [&](const FrontierArchive<Plan>& archive,
                        const std::vector<io::TraceCheckpoint>* trace, const fs::path& dir,
                        std::uint64_t seed, int replication) {
    fs::create_directories(dir);
    io::write_frontier_json(archive, frontier_config(options, spec, seed, replication),
                            dir / "frontier.json");
    outputs.push_back(fs::relative(dir / "frontier.json", out_dir).string());
    if (trace != nullptr) {
      io::write_trace_csv(*trace, criteria, dir / "trace.csv");
      outputs.push_back(fs::relative(dir / "trace.csv", out_dir).string());
    }
    write_plan_dir(archive, dir / "plans");
    if (criteria == 2) {
      write_scatter_svg(dir / "frontier.svg", archive.scores(), baseline_points,
                        criterion_names(spec.score_spec)[0], criterion_names(spec.score_spec)[1]);
      outputs.push_back(fs::relative(dir / "frontier.svg", out_dir).string());
    }
  };

  if (reps == 1) {
    emit(runs[0].archive, &runs[0].trace, out_dir, options.seed, 0);
    total_steps = runs[0].chain_steps;
  } else {
    std::vector<FrontierArchive<Plan>> archives;
    archives.reserve(runs.size());
    for (int r = 0; r < reps; ++r) {
      const auto& run = runs[static_cast<std::size_t>(r)];
      emit(run.archive, &run.trace, out_dir / fmt::format("rep_{:02}", r + 1),
           options.seed + static_cast<std::uint64_t>(r), r);
      archives.push_back(run.archive);
      total_steps += run.chain_steps;
    }
    emit(merge_archives(archives), nullptr, out_dir / "merged", options.seed, -1);
  }

  ordered_json invocation{{"graph", options.graph_path},
                          {"districts", options.districts},
                          {"scores", criterion_names(spec.score_spec)},
                          {"burst_size", options.burst_size},
                          {"bursts", options.bursts},
                          {"seed", options.seed},
                          {"init", options.init_path},
                          {"pop_tolerance", options.pop_tolerance},
                          {"out", options.out_dir},
                          {"replications", options.replications},
                          {"parallel", options.parallel},
                          {"trace_every", options.trace_every},
                          {"baseline", options.baseline_csv}};
  ordered_json inputs{{"graph_digest", io::file_digest(options.graph_path)}};
  if (!options.init_path.empty()) inputs["init_digest"] = io::file_digest(options.init_path);
  write_manifest(out_dir, "optimize", invocation, inputs,
                 ordered_json{{"bursts", options.bursts * reps}, {"chain_steps", total_steps}},
                 std::move(outputs), watch.seconds(), threads);
  fmt::print("wrote {} replication(s) to {}\n", reps, out_dir.string());
  return 0;
}

int run_baseline(const BaselineOptions& options) {
  const Stopwatch watch;
  if (options.steps < 0) throw std::runtime_error("--steps must be >= 0");
  const ProblemSpec spec = load_problem(options.graph_path, options.districts, options.scores,
                                        options.pop_tolerance);
  const fs::path out_dir = options.out_dir;
  fs::create_directories(out_dir);

  ChainConfig chain_config;
  chain_config.pop_tolerance = spec.pop_tolerance;
  chain_config.rng_seed = options.seed;
  const Plan init = initial_plan(spec, options.init_path, options.seed);
  auto chain = [&spec, &chain_config](const Plan& p, Rng& rng) {
    return recom_step(p, spec, chain_config, rng);
  };
  auto scorer = [&spec](const Plan& p) { return score(spec.graph, p, spec.score_spec); };
  const std::vector<ScoreVector> trace =
      baseline_chain_sample(init, scorer, chain, options.steps, options.seed);
  io::write_baseline_csv(trace, spec.score_spec.size(), out_dir / "baseline.csv");

  ordered_json invocation{{"graph", options.graph_path},
                          {"districts", options.districts},
                          {"scores", criterion_names(spec.score_spec)},
                          {"steps", options.steps},
                          {"seed", options.seed},
                          {"init", options.init_path},
                          {"pop_tolerance", options.pop_tolerance},
                          {"out", options.out_dir}};
  ordered_json inputs{{"graph_digest", io::file_digest(options.graph_path)}};
  if (!options.init_path.empty()) inputs["init_digest"] = io::file_digest(options.init_path);
  write_manifest(out_dir, "baseline", invocation, inputs,
                 ordered_json{{"chain_steps", options.steps}}, {"baseline.csv"},
                 watch.seconds(), 1);
  fmt::print("wrote {} samples to {}\n", trace.size(), (out_dir / "baseline.csv").string());
  return 0;
}

int run_burst_size_sweep(const SweepOptions& options) {
  const Stopwatch watch;
  if (options.burst_sizes.empty()) throw std::runtime_error("--b list must not be empty");
  if (options.bursts < 0) throw std::runtime_error("--bursts must be >= 0");
  if (options.replications < 1) throw std::runtime_error("--reps must be >= 1");
  const ProblemSpec spec = load_problem(options.graph_path, options.districts, options.scores,
                                        options.pop_tolerance);
  if (spec.score_spec.size() != 2) {
    throw std::runtime_error("burst-size-sweep scores hypervolume and requires two criteria");
  }
  const fs::path out_dir = options.out_dir;
  fs::create_directories(out_dir);

  const int reps = options.replications;
  const int cells = static_cast<int>(options.burst_sizes.size()) * reps;
  std::vector<FrontierArchive<Plan>> archives(static_cast<std::size_t>(cells));
  std::int64_t total_steps = 0;
  std::atomic<std::int64_t> steps{0};
  const int threads = worker_count(options.parallel, cells);
  run_pool(cells, threads, [&](int cell) {
    const int b = options.burst_sizes[static_cast<std::size_t>(cell / reps)];
    const int r = cell % reps;
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(r);
    const Plan init = seed_plan(spec, seed);
    ReplicationRun run = run_replication(spec, init, b, options.bursts, seed,
                                         std::max(1, options.bursts));
    steps += run.chain_steps;
    archives[static_cast<std::size_t>(cell)] = std::move(run.archive);
  });
  total_steps = steps.load();

  // A common reference point (componentwise min over every frontier score in
  // the sweep) makes the hypervolumes comparable across cells.
  ScoreVector reference(2, 0.0);
  bool first = true;
  for (const auto& archive : archives) {
    for (const auto& entry : archive.entries()) {
      for (int j = 0; j < 2; ++j) {
        reference[static_cast<std::size_t>(j)] =
            first ? entry.scores[static_cast<std::size_t>(j)]
                  : std::min(reference[static_cast<std::size_t>(j)],
                             entry.scores[static_cast<std::size_t>(j)]);
      }
      first = false;
    }
  }

  std::vector<std::string> outputs;
  std::string summary = "b,replication,hypervolume\n";
  for (std::size_t i = 0; i < options.burst_sizes.size(); ++i) {
    const int b = options.burst_sizes[i];
    std::vector<FrontierArchive<Plan>> per_b;
    for (int r = 0; r < reps; ++r) {
      const auto& archive = archives[i * static_cast<std::size_t>(reps) +
                                     static_cast<std::size_t>(r)];
      OptimizeOptions stub;
      stub.graph_path = options.graph_path;
      stub.burst_size = b;
      stub.bursts = options.bursts;
      const auto name = fmt::format("frontier_b{}_rep{:02}.json", b, r + 1);
      io::write_frontier_json(
          archive, frontier_config(stub, spec, options.seed + static_cast<std::uint64_t>(r), r),
          out_dir / name);
      outputs.push_back(name);
      summary += fmt::format("{},{},{}\n", b, r + 1, hypervolume(archive, reference));
      per_b.push_back(archive);
    }
    OptimizeOptions stub;
    stub.graph_path = options.graph_path;
    stub.burst_size = b;
    stub.bursts = options.bursts;
    const auto merged_name = fmt::format("merged_b{}.json", b);
    io::write_frontier_json(merge_archives(per_b), frontier_config(stub, spec, options.seed, -1),
                            out_dir / merged_name);
    outputs.push_back(merged_name);
  }
  std::ofstream(out_dir / "summary.csv", std::ios::binary) << summary;
  outputs.push_back("summary.csv");

  ordered_json invocation{{"graph", options.graph_path},
                          {"districts", options.districts},
                          {"scores", criterion_names(spec.score_spec)},
                          {"b", options.burst_sizes},
                          {"reps", options.replications},
                          {"bursts", options.bursts},
                          {"seed", options.seed},
                          {"pop_tolerance", options.pop_tolerance},
                          {"out", options.out_dir},
                          {"parallel", options.parallel}};
  write_manifest(out_dir, "experiment burst-size-sweep", invocation,
                 ordered_json{{"graph_digest", io::file_digest(options.graph_path)}},
                 ordered_json{{"chain_steps", total_steps}}, std::move(outputs),
                 watch.seconds(), threads);
  fmt::print("wrote {} frontier files to {}\n", cells, out_dir.string());
  return 0;
}

int run_frontier_scaling(const ScalingOptions& options) {
  const Stopwatch watch;
  if (options.sample_counts.empty() || options.dims.empty()) {
    throw std::runtime_error("--n and --J lists must not be empty");
  }
  if (options.replications < 1) throw std::runtime_error("--reps must be >= 1");
  const fs::path out_dir = options.out_dir;
  fs::create_directories(out_dir);

  std::string csv = "J,n,rep,frontier_size\n";
  std::uint64_t cell = 0;
  for (const int dims : options.dims) {
    for (const int n : options.sample_counts) {
      const FrontierSizeStats stats = frontier_size_experiment(
          n, dims, options.replications,
          options.seed + cell * static_cast<std::uint64_t>(options.replications));
      for (int r = 0; r < options.replications; ++r) {
        csv += fmt::format("{},{},{},{}\n", dims, n, r + 1,
                           stats.sizes[static_cast<std::size_t>(r)]);
      }
      ++cell;
    }
  }
  std::ofstream(out_dir / "frontier_scaling.csv", std::ios::binary) << csv;

  ordered_json invocation{{"n", options.sample_counts},
                          {"J", options.dims},
                          {"reps", options.replications},
                          {"seed", options.seed},
                          {"out", options.out_dir}};
  write_manifest(out_dir, "experiment frontier-scaling", invocation, ordered_json::object(),
                 ordered_json::object(), {"frontier_scaling.csv"}, watch.seconds(), 1);
  fmt::print("wrote {}\n", (out_dir / "frontier_scaling.csv").string());
  return 0;
}

}  // namespace pbursts::tools
