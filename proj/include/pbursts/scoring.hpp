#pragma once

#include <string>
#include <vector>

#include "pbursts/graph.hpp"
#include "pbursts/pareto.hpp"

namespace pbursts {

// Identifiers are spelled exactly as they appear in CLI flags and output
// metadata: "min_polsby_popper", "neg_max_pop_deviation", "weighted(...)".
enum class CriterionKind {
  kMinPolsbyPopper,     // min over districts of 4*pi*area/perim^2
  kNegMaxPopDeviation,  // -(max relative deviation from ideal population)
  kWeighted,            // convex combination of the two base criteria
};

struct Criterion {
  CriterionKind kind = CriterionKind::kMinPolsbyPopper;
  // kWeighted only: simplex weights over the base score vector
  // (neg_max_pop_deviation, min_polsby_popper), in that order.
  std::vector<double> weights;
};

// Ordered list of criteria; the score vector has one entry per criterion.
struct ScoreSpec {
  std::vector<Criterion> criteria;

  int size() const { return static_cast<int>(criteria.size()); }
};

// Parses a comma-separated criterion list, e.g.
// "neg_max_pop_deviation,min_polsby_popper" or "weighted(0.3,0.7)".
// Commas inside parentheses belong to the weight vector. Weights must be
// non-negative and sum to 1. Throws std::runtime_error on malformed input.
ScoreSpec parse_score_spec(const std::string& text);

std::string to_string(const Criterion& criterion);
std::vector<std::string> criterion_names(const ScoreSpec& spec);

// Graph + district count + chain population tolerance + criteria: everything
// that defines the plan space and how plans are scored.
struct ProblemSpec {
  AdjacencyGraph graph;
  int districts = 1;
  double pop_tolerance = 0.0;  // max allowed dev for chain proposals
  ScoreSpec score_spec;
};

// Smallest Polsby-Popper score over the plan's districts, 4*pi*area/perim^2
// (1 for a disk). Throws "degenerate district geometry" if any district has
// zero perimeter. Not clamped to [0, 1]: synthetic geometry may exceed 1.
double min_polsby_popper(const AdjacencyGraph& graph, const Plan& plan);

// Largest relative deviation of any district's population from the ideal
// N/m. Computed as max |m*N_i - N| / N, which is exact for integer
// populations and invariant under scaling every population by a constant.
double max_pop_deviation(const AdjacencyGraph& graph, const Plan& plan);

// Evaluates each criterion in spec order. Minimization-oriented criteria are
// negated here so every coordinate of the result is larger-is-better and the
// Pareto engine stays orientation-free.
ScoreVector score(const AdjacencyGraph& graph, const Plan& plan, const ScoreSpec& spec);

// Dot product of a score vector with simplex weights.
double scalarize(const ScoreVector& v, const std::vector<double>& weights);

}  // namespace pbursts
