#pragma once

#include <limits>
#include <vector>

#include "qemcq/problem.hpp"
#include "qemcq/solution.hpp"

namespace qemcq {

enum class StopReason { kBudgetExhausted, kTargetReached };

// Thrown by Evaluator::evaluate to unwind a search; caught in run_search.
// Operators keep all population updates made before the throw.
struct SearchStop {
  StopReason reason;
};

// Owns the evaluation budget and the best-so-far record for one search run.
// Every fitness call in a run goes through here, including initialization.
class Evaluator {
 public:
  Evaluator(const SearchProblem& problem, int max_evaluations,
            bool record_trace = false)
      : problem_(&problem),
        max_evaluations_(max_evaluations),
        record_trace_(record_trace) {}

  double evaluate(const SolutionVector& v) {
    if (used_ >= max_evaluations_) throw SearchStop{StopReason::kBudgetExhausted};
    ++used_;
    const double f = problem_->fitness(v);
    if (f > best_fitness_) {
      best_fitness_ = f;
      best_ = v;
    }
    if (record_trace_) trace_.push_back(best_fitness_);
    if (problem_->target_fitness && f >= *problem_->target_fitness) {
      throw SearchStop{StopReason::kTargetReached};
    }
    return f;
  }

  int used() const { return used_; }
  int remaining() const { return max_evaluations_ - used_; }
  bool has_best() const { return !best_.empty(); }
  const SolutionVector& best() const { return best_; }
  double best_fitness() const { return best_fitness_; }
  const std::vector<double>& trace() const { return trace_; }

 private:
  const SearchProblem* problem_;
  int max_evaluations_;
  bool record_trace_;
  int used_ = 0;
  SolutionVector best_;
  double best_fitness_ = -std::numeric_limits<double>::infinity();
  std::vector<double> trace_;  // best-so-far after each evaluation
};

}  // namespace qemcq
