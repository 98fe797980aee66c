#include "pbursts/scoring.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace pbursts {

namespace {

void check_simplex(const std::vector<double>& weights) {
  if (weights.empty()) throw std::runtime_error("weight vector is empty");
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0)) throw std::runtime_error("weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::runtime_error(fmt::format("weights must sum to 1, got {}", sum));
  }
}

Criterion parse_criterion(const std::string& token) {
  if (token == "min_polsby_popper") return {CriterionKind::kMinPolsbyPopper, {}};
  if (token == "neg_max_pop_deviation") return {CriterionKind::kNegMaxPopDeviation, {}};
  if (token.rfind("weighted(", 0) == 0 && token.back() == ')') {
    const std::string inner = token.substr(9, token.size() - 10);
    std::vector<double> weights;
    std::size_t pos = 0;
    while (pos <= inner.size()) {
      const std::size_t comma = inner.find(',', pos);
      const std::string part = inner.substr(pos, comma == std::string::npos
                                                     ? std::string::npos
                                                     : comma - pos);
      try {
        std::size_t used = 0;
        weights.push_back(std::stod(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw std::runtime_error(fmt::format("bad weight '{}' in criterion '{}'", part, token));
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (weights.size() != 2) {
      throw std::runtime_error(
          fmt::format("weighted(...) takes two weights over "
                      "(neg_max_pop_deviation, min_polsby_popper), got {}",
                      weights.size()));
    }
    check_simplex(weights);
    return {CriterionKind::kWeighted, std::move(weights)};
  }
  throw std::runtime_error(fmt::format("unknown criterion '{}'", token));
}

}  // namespace

ScoreSpec parse_score_spec(const std::string& text) {
  ScoreSpec spec;
  std::string token;
  int depth = 0;
  for (const char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      spec.criteria.push_back(parse_criterion(token));
      token.clear();
    } else {
      token += c;
    }
  }
  spec.criteria.push_back(parse_criterion(token));
  return spec;
}

std::string to_string(const Criterion& criterion) {
  switch (criterion.kind) {
    case CriterionKind::kMinPolsbyPopper:
      return "min_polsby_popper";
    case CriterionKind::kNegMaxPopDeviation:
      return "neg_max_pop_deviation";
    case CriterionKind::kWeighted:
      return fmt::format("weighted({},{})", criterion.weights[0], criterion.weights[1]);
  }
  return "?";
}

std::vector<std::string> criterion_names(const ScoreSpec& spec) {
  std::vector<std::string> names;
  names.reserve(spec.criteria.size());
  for (const Criterion& c : spec.criteria) names.push_back(to_string(c));
  return names;
}

double min_polsby_popper(const AdjacencyGraph& graph, const Plan& plan) {
  const std::vector<DistrictGeometry> geo = district_geometry(graph, plan);
  double worst = std::numeric_limits<double>::infinity();
  for (int d = 0; d < static_cast<int>(geo.size()); ++d) {
    const DistrictGeometry& g = geo[static_cast<std::size_t>(d)];
    if (!(g.perimeter > 0.0)) {
      throw std::runtime_error(
          fmt::format("degenerate district geometry: district {} has zero perimeter", d + 1));
    }
    const double pp = 4.0 * std::numbers::pi * g.area / (g.perimeter * g.perimeter);
    if (pp < worst) worst = pp;
  }
  return worst;
}

double max_pop_deviation(const AdjacencyGraph& graph, const Plan& plan) {
  const std::vector<std::int64_t> pops = district_populations(graph, plan);
  const std::int64_t total = graph.total_pop();
  const auto m = static_cast<std::int64_t>(plan.district_count);
  // max |N_i - N/m| / (N/m) == max |m*N_i - N| / N; the numerator stays in
  // integers so equal-population plans score exactly 0.
  std::int64_t worst = 0;
  for (const std::int64_t p : pops) {
    worst = std::max(worst, std::abs(p * m - total));
  }
  return static_cast<double>(worst) / static_cast<double>(total);
}

ScoreVector score(const AdjacencyGraph& graph, const Plan& plan, const ScoreSpec& spec) {
  if (spec.criteria.empty()) throw std::runtime_error("score spec is empty");
  ScoreVector out;
  out.reserve(spec.criteria.size());
  for (const Criterion& c : spec.criteria) {
    switch (c.kind) {
      case CriterionKind::kMinPolsbyPopper:
        out.push_back(min_polsby_popper(graph, plan));
        break;
      case CriterionKind::kNegMaxPopDeviation:
        out.push_back(-max_pop_deviation(graph, plan));
        break;
      case CriterionKind::kWeighted:
        out.push_back(scalarize({-max_pop_deviation(graph, plan),
                                 min_polsby_popper(graph, plan)},
                                c.weights));
        break;
    }
  }
  return out;
}

double scalarize(const ScoreVector& v, const std::vector<double>& weights) {
  if (v.size() != weights.size()) {
    throw std::invalid_argument(
        fmt::format("scalarize: {} scores but {} weights", v.size(), weights.size()));
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) sum += weights[j] * v[j];
  return sum;
}

}  // namespace pbursts
