#include "qemcq/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qemcq {

namespace {

void validate_config(const RunConfig& config) {
  if (config.population_size < 1) {
    throw std::invalid_argument("population_size must be >= 1");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
  if (config.max_evaluations < config.population_size) {
    throw std::invalid_argument(
        "max_evaluations must cover the initial population");
  }
  if (config.discount < 0.0 || config.discount > 1.0) {
    throw std::invalid_argument("discount outside [0, 1]");
  }
}

// Uniform draw from the three operators other than `current`.
OperatorId random_other_operator(OperatorId current, Rng& rng) {
  int pick = rng.uniform_int(0, kOperatorCount - 2);
  if (pick >= static_cast<int>(current)) ++pick;
  return static_cast<OperatorId>(pick);
}

}  // namespace

bool metropolis_accept(double delta, int iteration, int non_improvement,
                       double u) {
  if (delta < 0.0) throw std::invalid_argument("metropolis_accept: delta < 0");
  if (iteration < 1 || non_improvement < 1) {
    throw std::invalid_argument("metropolis_accept: counters must be >= 1");
  }
  if (delta == 0.0) return true;
  return u < std::exp(-delta * static_cast<double>(iteration) /
                      static_cast<double>(non_improvement));
}

OperatorId episode_cycle(QTable& table, Population& pop, Evaluator& eval,
                         const LevyParams& params, const Bounds& bounds,
                         OperatorId state, int iteration, int max_iteration,
                         Rng& rng) {
  const double alpha = learning_rate(iteration, max_iteration);
  bool visited[kOperatorCount] = {false, false, false, false};
  OperatorId s = state;
  for (int step = 0; step < kOperatorCount; ++step) {
    OperatorId action;
    if (step == kOperatorCount - 1) {
      action = state;  // close the cycle
    } else {
      // Argmax over operators not yet taken as actions; the start operator
      // is reserved for the closing step. Ties break uniformly.
      double best_value = 0.0;
      bool any = false;
      for (int a = 0; a < kOperatorCount; ++a) {
        if (visited[a] || a == static_cast<int>(state)) continue;
        const double v = table.at(s, static_cast<OperatorId>(a));
        if (!any || v > best_value) {
          best_value = v;
          any = true;
        }
      }
      int ties[kOperatorCount];
      int tie_count = 0;
      for (int a = 0; a < kOperatorCount; ++a) {
        if (visited[a] || a == static_cast<int>(state)) continue;
        if (table.at(s, static_cast<OperatorId>(a)) == best_value) {
          ties[tie_count++] = a;
        }
      }
      action = static_cast<OperatorId>(
          tie_count == 1 ? ties[0] : ties[rng.uniform_int(0, tie_count - 1)]);
    }
    const OperatorOutcome outcome =
        apply_operator(action, pop, eval, params, bounds, rng);
    table.update(s, action, reward(outcome.improved), alpha);
    visited[static_cast<int>(action)] = true;
    s = action;
  }
  return s;
}

RunResult run_search(const SearchProblem& problem, const RunConfig& config) {
  validate_problem(problem);
  validate_config(config);

  Rng rng(config.seed);
  Evaluator eval(problem, config.max_evaluations, config.record_trace);
  RunResult result;
  const Bounds& bounds = problem.bounds;
  const bool learned = config.selector == SelectorKind::kQEMCQ;

  Population pop;
  QTable table(config.discount);
  OperatorId state = OperatorId::kLevyPerturbation;
  OperatorId op = OperatorId::kLevyPerturbation;

  try {
    pop.members.resize(config.population_size);
    pop.fitness.resize(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
      SolutionVector v(bounds.size());
      for (std::size_t d = 0; d < bounds.size(); ++d) {
        v[d] = rng.uniform_int(bounds[d].lo, bounds[d].hi);
      }
      pop.members[i] = std::move(v);
      pop.fitness[i] = eval.evaluate(pop.members[i]);
    }

    if (learned) {
      // Priming cycle so the first argmax reads a non-degenerate table;
      // alpha = 1 at t = 0.
      state = episode_cycle(table, pop, eval, config.levy, bounds,
                            OperatorId::kLevyPerturbation, 0,
                            config.max_iterations, rng);
      op = table.select_action(state, rng);
    } else {
      op = static_cast<OperatorId>(rng.uniform_int(0, kOperatorCount - 1));
      state = op;
    }

    int non_improvement = 1;
    for (int t = 1; t <= config.max_iterations; ++t) {
      const double previous_best = eval.best_fitness();
      const OperatorOutcome outcome =
          apply_operator(op, pop, eval, config.levy, bounds, rng);
      result.iterations_run = t;
      if (learned) {
        table.update(state, op, reward(outcome.improved),
                     learning_rate(t, config.max_iterations));
      }
      state = op;
      if (outcome.improved) {
        non_improvement = 1;
        const double delta =
            std::max(0.0, previous_best - outcome.best_candidate_fitness);
        const double u = rng.uniform01();
        if (!metropolis_accept(delta, t, non_improvement, u)) {
          op = learned ? table.select_action(state, rng)
                       : random_other_operator(op, rng);
        }
      } else {
        ++non_improvement;
        ++result.non_improving_steps;
        if (learned) {
          ++result.episode_cycles;
          state = episode_cycle(table, pop, eval, config.levy, bounds, state,
                                t, config.max_iterations, rng);
          op = table.select_action(state, rng);
        } else {
          op = random_other_operator(op, rng);
        }
      }
    }
  } catch (const SearchStop& stop) {
    result.target_reached = stop.reason == StopReason::kTargetReached;
  }

  result.best = eval.best();
  result.best_fitness = eval.best_fitness();
  result.evaluations_used = eval.used();
  result.trace = eval.trace();
  return result;
}

}  // namespace qemcq
