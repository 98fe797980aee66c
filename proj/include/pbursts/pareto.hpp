#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pbursts/rng.hpp"

namespace pbursts {

// A plan's J criterion values, oriented so larger is better on every
// coordinate. Criteria that are natively minimized are stored negated.
using ScoreVector = std::vector<double>;

// True iff b Pareto-dominates a: b is weakly better on every coordinate and
// strictly better on at least one. Irreflexive, asymmetric and transitive.
// Throws std::invalid_argument on length mismatch.
bool dominated_by(const ScoreVector& a, const ScoreVector& b);

// Area (two criteria only) of the union of rectangles spanned by `reference`
// and each score. Every score must weakly dominate the reference on both
// coordinates; an empty set has hypervolume 0.
double hypervolume(const std::vector<ScoreVector>& scores,
                   const ScoreVector& reference);

template <typename State>
struct FrontierEntry {
  State state;
  ScoreVector scores;
  int burst_found = 0;  // 0 for initial states, else the burst that found it
};

// The evolving non-dominated set. Entries form an antichain under Pareto
// dominance; exact-duplicate states are collapsed while distinct states with
// equal score vectors are all retained (equal vectors do not dominate each
// other). Insertion order is preserved, which keeps burst sampling
// deterministic for a fixed seed.
template <typename State>
class FrontierArchive {
 public:
  // Adds the candidate unless it is strictly dominated by, or a duplicate
  // state of, an existing entry. Entries the candidate dominates are removed.
  // Returns true when the candidate was added.
  bool insert(State state, ScoreVector scores, int burst_found) {
    for (const double s : scores) {
      if (!std::isfinite(s)) throw std::invalid_argument("archive scores must be finite");
    }
    for (const FrontierEntry<State>& e : entries_) {
      if (e.state == state) return false;
      if (dominated_by(scores, e.scores)) return false;
    }
    std::erase_if(entries_, [&scores](const FrontierEntry<State>& e) {
      return dominated_by(e.scores, scores);
    });
    entries_.push_back(FrontierEntry<State>{std::move(state), std::move(scores), burst_found});
    return true;
  }

  const std::vector<FrontierEntry<State>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<ScoreVector> scores() const {
    std::vector<ScoreVector> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.scores);
    return out;
  }

  // Distinct score vectors, sorted; useful for set comparisons in tests and
  // for checking a run against an enumerated frontier.
  std::vector<ScoreVector> score_set() const;

 private:
  std::vector<FrontierEntry<State>> entries_;
};

template <typename State>
std::vector<ScoreVector> FrontierArchive<State>::score_set() const {
  std::vector<ScoreVector> out = scores();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Non-dominated filter over (state, score) points.
template <typename State>
FrontierArchive<State> prune(const std::vector<std::pair<State, ScoreVector>>& points) {
  FrontierArchive<State> archive;
  for (const auto& [state, scores] : points) archive.insert(state, scores, 0);
  return archive;
}

// prune of the union of several archives, keeping each entry's original
// burst provenance. Used to combine replications run with distinct seeds.
template <typename State>
FrontierArchive<State> merge_archives(const std::vector<FrontierArchive<State>>& archives) {
  FrontierArchive<State> merged;
  for (const auto& a : archives) {
    for (const auto& e : a.entries()) merged.insert(e.state, e.scores, e.burst_found);
  }
  return merged;
}

struct BurstConfig {
  int burst_size = 10;
  int max_bursts = 0;
  std::uint64_t rng_seed = 0;
  // Optional early stop: the run ends once some archive entry weakly meets
  // every threshold (for the univariate algorithm, the single threshold).
  std::vector<double> stop_thresholds;
};

template <typename State>
bool meets_thresholds(const FrontierArchive<State>& archive,
                      const std::vector<double>& thresholds) {
  if (thresholds.empty()) return false;
  for (const auto& e : archive.entries()) {
    if (e.scores.size() != thresholds.size()) {
      throw std::invalid_argument("threshold length does not match criterion count");
    }
    bool ok = true;
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
      if (e.scores[j] < thresholds[j]) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

template <typename State>
struct UnivariateResult {
  State best;
  std::vector<double> trace;  // best score so far; trace[0] is the initial score
};

// Hill climbing by short bursts for a single criterion: run the chain for
// `burst_size` steps, restart from the best of the b+1 visited states, and
// repeat. Ties keep the lowest index, so the incumbent survives plateaus.
// ChainFn: State(const State&, Rng&). ScoreFn: double(const State&).
template <typename State, typename ScoreFn, typename ChainFn>
UnivariateResult<State> short_burst_univariate(State init, ScoreFn&& f, ChainFn&& chain,
                                               const BurstConfig& config) {
  if (config.burst_size < 1) throw std::invalid_argument("burst size must be >= 1");
  Rng rng(config.rng_seed);
  State incumbent = std::move(init);
  double best = f(incumbent);
  std::vector<double> trace{best};
  for (int burst = 1; burst <= config.max_bursts; ++burst) {
    if (!config.stop_thresholds.empty() && best >= config.stop_thresholds.front()) break;
    State current = incumbent;
    for (int step = 0; step < config.burst_size; ++step) {
      current = chain(current, rng);
      const double s = f(current);
      if (s > best) {
        best = s;
        incumbent = current;
      }
    }
    trace.push_back(best);
  }
  return UnivariateResult<State>{std::move(incumbent), std::move(trace)};
}

// Pareto optimization by short bursts: each burst starts from a state drawn
// uniformly from the current non-dominated archive, and every visited state
// competes for membership. The univariate algorithm is the J = 1 special
// case; a singleton archive consumes no selection randomness, so both
// algorithms replay the same chain stream under one seed.
//
// Observer: void(int burst, const FrontierArchive<State>&), invoked once with
// burst 0 for the pruned initial set and then after every burst.
template <typename State, typename ScoreFn, typename ChainFn, typename Observer>
FrontierArchive<State> pareto_short_bursts(const std::vector<State>& init_set, ScoreFn&& f,
                                           ChainFn&& chain, const BurstConfig& config,
                                           Observer&& observe) {
  if (init_set.empty()) throw std::invalid_argument("initial state set is empty");
  if (config.burst_size < 1) throw std::invalid_argument("burst size must be >= 1");
  FrontierArchive<State> archive;
  for (const State& s : init_set) archive.insert(s, f(s), 0);
  Rng rng(config.rng_seed);
  observe(0, static_cast<const FrontierArchive<State>&>(archive));
  for (int burst = 1; burst <= config.max_bursts; ++burst) {
    if (meets_thresholds(archive, config.stop_thresholds)) break;
    const std::size_t pick =
        archive.size() == 1 ? 0 : static_cast<std::size_t>(rng.uniform_index(archive.size()));
    State current = archive.entries()[pick].state;
    for (int step = 0; step < config.burst_size; ++step) {
      current = chain(current, rng);
      archive.insert(current, f(current), burst);
    }
    observe(burst, static_cast<const FrontierArchive<State>&>(archive));
  }
  return archive;
}

template <typename State, typename ScoreFn, typename ChainFn>
FrontierArchive<State> pareto_short_bursts(const std::vector<State>& init_set, ScoreFn&& f,
                                           ChainFn&& chain, const BurstConfig& config) {
  return pareto_short_bursts(init_set, std::forward<ScoreFn>(f), std::forward<ChainFn>(chain),
                             config, [](int, const FrontierArchive<State>&) {});
}

// Score trace of a raw chain run: `steps` accepted moves from `init`, scoring
// every visited state including the initial one (steps + 1 vectors). This is
// the sampling baseline the optimizer is compared against.
template <typename State, typename ScoreFn, typename ChainFn>
std::vector<ScoreVector> baseline_chain_sample(State init, ScoreFn&& f, ChainFn&& chain,
                                               int steps, std::uint64_t rng_seed) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  Rng rng(rng_seed);
  std::vector<ScoreVector> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  State current = std::move(init);
  out.push_back(f(current));
  for (int i = 0; i < steps; ++i) {
    current = chain(current, rng);
    out.push_back(f(current));
  }
  return out;
}

template <typename State>
double hypervolume(const FrontierArchive<State>& archive, const ScoreVector& reference) {
  return hypervolume(archive.scores(), reference);
}

}  // namespace pbursts
