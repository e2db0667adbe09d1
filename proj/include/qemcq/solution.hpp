#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace qemcq {

// Candidate solutions are integer vectors; each coordinate has an inclusive
// range. Covering arrays use [0, v_i - 1] per parameter, clustering uses
// [0, n - 1] module labels.
using SolutionVector = std::vector<int>;

struct ValueRange {
  int lo = 0;
  int hi = 0;
};

using Bounds = std::vector<ValueRange>;

// Maps a continuous operator result back onto the integer grid: round half
// away from zero, then clamp into the range.
inline int discretize(double x, const ValueRange& range) {
  const double rounded = std::round(x);
  if (rounded < range.lo) return range.lo;
  if (rounded > range.hi) return range.hi;
  return static_cast<int>(rounded);
}

inline bool in_bounds(const SolutionVector& v, const Bounds& bounds) {
  if (v.size() != bounds.size()) return false;
  for (std::size_t d = 0; d < v.size(); ++d) {
    if (v[d] < bounds[d].lo || v[d] > bounds[d].hi) return false;
  }
  return true;
}

}  // namespace qemcq
