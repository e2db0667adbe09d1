#pragma once

#include <cstdint>
#include <vector>

#include "qemcq/operators.hpp"
#include "qemcq/problem.hpp"
#include "qemcq/qtable.hpp"

namespace qemcq {

enum class SelectorKind { kQEMCQ, kEMCQ };

struct RunConfig {
  SelectorKind selector = SelectorKind::kQEMCQ;
  int population_size = 20;
  int max_iterations = 2500;   // operator applications per run
  int max_evaluations = 1500;  // fitness budget per run
  double discount = 0.8;       // Q-table discount factor
  LevyParams levy{};
  std::uint64_t seed = 1;
  bool record_trace = false;
};

struct RunResult {
  SolutionVector best;
  double best_fitness = 0.0;
  int evaluations_used = 0;
  bool target_reached = false;
  int iterations_run = 0;        // completed main-loop operator applications
  int non_improving_steps = 0;
  int episode_cycles = 0;        // mid-loop cycles (priming not counted)
  std::vector<double> trace;     // best-so-far per evaluation, if recorded
};

// exp(-delta * T / q) > u, with the delta = 0 case always accepted.
bool metropolis_accept(double delta, int iteration, int non_improvement,
                       double u);

// One episode: starting from `state`, executes each operator exactly once as
// an action (intermediate actions by argmax over unvisited operators, the
// final action returns to `state`), applying one Q-table backup per step.
// Rewards come from operator outcomes; alpha = learning_rate(iteration,
// max_iteration). Returns the final state (= `state` on completion). Budget
// or target exhaustion propagates as SearchStop with partial updates kept.
OperatorId episode_cycle(QTable& table, Population& pop, Evaluator& eval,
                         const LevyParams& params, const Bounds& bounds,
                         OperatorId state, int iteration, int max_iteration,
                         Rng& rng);

// Runs one full search: random initial population, then max_iterations
// operator applications with Q-learning selection (QEMCQ) or uniform random
// re-selection (EMCQ), both under exponential Monte Carlo retention of the
// current operator. Stops early when the budget is spent or the problem
// target is reached.
RunResult run_search(const SearchProblem& problem, const RunConfig& config);

}  // namespace qemcq
