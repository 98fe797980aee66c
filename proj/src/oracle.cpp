#include "pbursts/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <fmt/format.h>

#include "pbursts/rng.hpp"

namespace pbursts {

namespace {

constexpr int kEnumerationNodeLimit = 20;

class PlanEnumerator {
 public:
  PlanEnumerator(const ProblemSpec& spec, EnumerationResult& out)
      : spec_(spec),
        graph_(spec.graph),
        n_(graph_.node_count()),
        m_(spec.districts),
        total_(graph_.total_pop()),
        labels_(static_cast<std::size_t>(n_), 0),
        district_pop_(static_cast<std::size_t>(m_) + 1, 0),
        out_(out) {}

  void run() { assign(0, 0); }

 private:
  void assign(int node, int used) {
    if (node == n_) {
      if (used == m_ && deviation_ok()) record();
      return;
    }
    // Unopened districts each still need a node.
    const int max_label = std::min(used + 1, m_);
    for (int d = 1; d <= max_label; ++d) {
      const int now_used = std::max(used, d);
      if (m_ - now_used > n_ - node - 1) continue;
      labels_[static_cast<std::size_t>(node)] = d;
      district_pop_[static_cast<std::size_t>(d)] += graph_.node(node).pop;
      if (population_ceiling_ok(d) && completable(node, now_used)) {
        assign(node + 1, now_used);
      }
      district_pop_[static_cast<std::size_t>(d)] -= graph_.node(node).pop;
      labels_[static_cast<std::size_t>(node)] = 0;
    }
  }

  // District populations only grow, so one above the ceiling is dead.
  bool population_ceiling_ok(int d) const {
    const std::int64_t over =
        district_pop_[static_cast<std::size_t>(d)] * m_ - total_;
    return static_cast<double>(over) <= spec_.pop_tolerance * static_cast<double>(total_);
  }

  bool deviation_ok() const {
    std::int64_t worst = 0;
    for (int d = 1; d <= m_; ++d) {
      worst = std::max(worst,
                       std::abs(district_pop_[static_cast<std::size_t>(d)] * m_ - total_));
    }
    return static_cast<double>(worst) <= spec_.pop_tolerance * static_cast<double>(total_);
  }

  // Every district must stay reachable: its assigned members have to lie in
  // one component of the subgraph over {members of d} + {nodes after `last`}.
  // With no nodes left this is exactly per-district contiguity.
  bool completable(int last, int used) {
    for (int d = 1; d <= used; ++d) {
      int start = -1;
      int members = 0;
      for (int v = 0; v <= last; ++v) {
        if (labels_[static_cast<std::size_t>(v)] == d) {
          if (start < 0) start = v;
          ++members;
        }
      }
      if (members <= 1) continue;
      std::vector<char> seen(static_cast<std::size_t>(n_), 0);
      std::vector<int> stack{start};
      seen[static_cast<std::size_t>(start)] = 1;
      int reached = 1;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [u, ei] : graph_.neighbors(v)) {
          if (seen[static_cast<std::size_t>(u)]) continue;
          const bool allowed =
              u > last || labels_[static_cast<std::size_t>(u)] == d;
          if (!allowed) continue;
          seen[static_cast<std::size_t>(u)] = 1;
          if (u <= last && labels_[static_cast<std::size_t>(u)] == d) ++reached;
          stack.push_back(u);
        }
      }
      if (reached != members) return false;
    }
    return true;
  }

  void record() {
    Plan plan;
    plan.assignment = labels_;
    plan.district_count = m_;
    out_.frontier.insert(plan, score(graph_, plan, spec_.score_spec), 0);
    out_.plans.push_back(std::move(plan));
  }

  const ProblemSpec& spec_;
  const AdjacencyGraph& graph_;
  const int n_;
  const int m_;
  const std::int64_t total_;
  std::vector<int> labels_;
  std::vector<std::int64_t> district_pop_;
  EnumerationResult& out_;
};

}  // namespace

EnumerationResult enumerate_plans(const ProblemSpec& spec) {
  const int n = spec.graph.node_count();
  if (n > kEnumerationNodeLimit) {
    throw std::runtime_error(
        fmt::format("instance too large to enumerate: {} nodes exceeds the limit of {} "
                    "(plan count grows combinatorially)",
                    n, kEnumerationNodeLimit));
  }
  if (spec.districts < 1 || spec.districts > n) {
    throw std::runtime_error(
        fmt::format("cannot form {} districts from {} nodes", spec.districts, n));
  }
  EnumerationResult result;
  PlanEnumerator(spec, result).run();
  result.count = static_cast<std::int64_t>(result.plans.size());
  return result;
}

FrontierSizeStats frontier_size_experiment(int n, int dims, int reps, std::uint64_t seed) {
  if (n < 1 || dims < 1 || reps < 1) {
    throw std::invalid_argument("frontier_size_experiment requires n, dims, reps >= 1");
  }
  FrontierSizeStats stats;
  stats.sizes.reserve(static_cast<std::size_t>(reps));
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(seed + static_cast<std::uint64_t>(rep));
    FrontierArchive<int> archive;
    for (int i = 0; i < n; ++i) {
      ScoreVector v(static_cast<std::size_t>(dims));
      for (double& x : v) x = rng.normal();
      archive.insert(i, std::move(v), 0);
    }
    stats.sizes.push_back(static_cast<int>(archive.size()));
  }
  double sum = 0.0;
  for (const int s : stats.sizes) sum += s;
  stats.mean = sum / reps;
  if (reps > 1) {
    double ss = 0.0;
    for (const int s : stats.sizes) ss += (s - stats.mean) * (s - stats.mean);
    stats.stddev = std::sqrt(ss / (reps - 1));
  }
  return stats;
}

}  // namespace pbursts
