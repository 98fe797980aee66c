#pragma once

#include <cstdint>
#include <vector>

#include "pbursts/graph.hpp"
#include "pbursts/pareto.hpp"
#include "pbursts/scoring.hpp"

namespace pbursts {

// Ground truth for small instances: every valid plan, its exact Pareto
// frontier, and the plan-space size.
struct EnumerationResult {
  std::vector<Plan> plans;       // canonical labels: districts numbered by smallest member
  FrontierArchive<Plan> frontier;
  std::int64_t count = 0;        // == plans.size()
};

// Exhaustively generates every contiguous m-district plan within the
// population tolerance, by recursive label assignment in node order. A new
// label may only open in sequence, so label permutations collapse and each
// partition appears exactly once. Partial assignments are pruned when a
// district can no longer be reconnected through unassigned nodes or its
// population already exceeds the tolerance ceiling. An infeasible tolerance
// yields count 0; instances with more than 20 nodes are refused (the plan
// count grows combinatorially).
EnumerationResult enumerate_plans(const ProblemSpec& spec);

struct FrontierSizeStats {
  double mean = 0.0;
  double stddev = 0.0;          // sample standard deviation across reps
  std::vector<int> sizes;       // one frontier size per rep
};

// Size of the non-dominated subset of n independent standard-normal
// dims-vectors, replicated `reps` times with seeds seed, seed+1, ....
// Normal variates come from the Box-Muller transform (see Rng::normal), so
// results are reproducible for a given seed.
FrontierSizeStats frontier_size_experiment(int n, int dims, int reps, std::uint64_t seed);

}  // namespace pbursts
