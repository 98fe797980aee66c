#pragma once

#include <cstdint>
#include <vector>

#include "pbursts/graph.hpp"
#include "pbursts/rng.hpp"
#include "pbursts/scoring.hpp"

namespace pbursts {

inline constexpr int kDefaultMaxAttempts = 1000;

struct ChainConfig {
  double pop_tolerance = 0.10;  // max allowed dev for any proposed plan
  int max_attempts = kDefaultMaxAttempts;  // internal rejection retries per step
  std::uint64_t rng_seed = 0;
};

// A chain position: the current plan plus the generator that drives it.
// Exclusively owned by one worker; copies evolve independently.
struct ChainState {
  Plan current;
  Rng rng;

  ChainState(Plan plan, std::uint64_t seed) : current(std::move(plan)), rng(seed) {}
};

// Builds a contiguous m-district plan with dev <= pop_tolerance by recursive
// spanning-tree bipartition: the region with the most districts left to carve
// is split by drawing a random spanning tree and cutting the edge whose two
// sides best match their share of the ideal population. Throws
// "no feasible seed found" when max_attempts tree draws at some split all
// fail the tolerance.
Plan seed_plan(const ProblemSpec& spec, std::uint64_t seed,
               int max_attempts = kDefaultMaxAttempts);

// One accepted recombination move, driven by the caller's generator:
//   1. pick a uniformly random pair of adjacent districts;
//   2. draw a random spanning tree of their union (uniform edge weights +
//      minimum spanning tree);
//   3. collect tree edges whose removal leaves both sides within
//      pop_tolerance of the ideal N/m;
//   4. cut one uniformly at random and relabel, or retry from 1.
// District count, contiguity and tolerance are preserved. Throws
// "step requires m >= 2" for single-district plans and
// "step rejection exhausted" after max_attempts failed proposals.
Plan recom_step(const Plan& current, const ProblemSpec& spec, const ChainConfig& config,
                Rng& rng);

// Value-semantics wrapper over the step above.
ChainState recom_step(ChainState state, const ProblemSpec& spec, const ChainConfig& config);

// Applies recom_step b times (b >= 1), returning the visited plans in order
// and leaving `state` at the last one. Deterministic given the state's seed.
std::vector<Plan> run_burst(ChainState& state, const ProblemSpec& spec,
                            const ChainConfig& config, int b);

}  // namespace pbursts
