#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "qemcq/solution.hpp"

namespace qemcq {

// A maximization problem over bounded integer vectors. Minimization callers
// negate their objective. The fitness function must be pure: equal vectors
// always score equal fitness.
struct SearchProblem {
  Bounds bounds;
  std::function<double(const SolutionVector&)> fitness;
  // When set, a fitness >= target stops the search early.
  std::optional<double> target_fitness;

  int dimension() const { return static_cast<int>(bounds.size()); }
};

inline void validate_problem(const SearchProblem& problem) {
  if (problem.bounds.empty()) {
    throw std::invalid_argument("search problem has dimension 0");
  }
  if (!problem.fitness) {
    throw std::invalid_argument("search problem has no fitness function");
  }
  for (const ValueRange& r : problem.bounds) {
    if (r.lo > r.hi) {
      throw std::invalid_argument("search problem bound has lo > hi");
    }
  }
}

}  // namespace qemcq
