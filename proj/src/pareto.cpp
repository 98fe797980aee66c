#include "pbursts/pareto.hpp"

#include <algorithm>
#include <stdexcept>

namespace pbursts {

bool dominated_by(const ScoreVector& a, const ScoreVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("score vectors differ in length");
  }
  bool strict = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
    if (a[j] < b[j]) strict = true;
  }
  return strict;
}

double hypervolume(const std::vector<ScoreVector>& scores, const ScoreVector& reference) {
  if (reference.size() != 2) {
    throw std::invalid_argument("hypervolume requires exactly two criteria");
  }
  if (scores.empty()) return 0.0;
  std::vector<ScoreVector> pts = scores;
  for (const ScoreVector& p : pts) {
    if (p.size() != 2) throw std::invalid_argument("hypervolume requires exactly two criteria");
    if (p[0] < reference[0] || p[1] < reference[1]) {
      throw std::invalid_argument("hypervolume point lies below the reference");
    }
  }
  // Sweep right to left; each point adds the rectangle strip above the
  // highest second coordinate covered so far.
  std::sort(pts.begin(), pts.end(), [](const ScoreVector& x, const ScoreVector& y) {
    return x[0] != y[0] ? x[0] > y[0] : x[1] > y[1];
  });
  double area = 0.0;
  double covered = reference[1];
  for (const ScoreVector& p : pts) {
    if (p[1] > covered) {
      area += (p[0] - reference[0]) * (p[1] - covered);
      covered = p[1];
    }
  }
  return area;
}

}  // namespace pbursts
