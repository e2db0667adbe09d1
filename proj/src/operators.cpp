#include "qemcq/operators.hpp"

#include <stdexcept>

// Random draw order per visited member (fixed, so runs are reproducible):
//   levy_flight_perturbation: column index, then one Levy step (normal u,
//     normal v with zero-resample; each normal is two uniforms).
//   local_pollination: peer p, peer q (redrawn while q == p), factor gamma.
//   global_pollination: factor rho, then one Levy step per coordinate.
//   jaya: factor phi, then factor zeta.
// Factors are uniform on (0, 1). Members are visited in index order and
// replaced only on strict fitness improvement.

namespace qemcq {

namespace {

void check_population(const Population& pop) {
  if (pop.members.empty()) {
    throw std::invalid_argument("operator applied to empty population");
  }
  if (pop.fitness.size() != pop.members.size()) {
    throw std::invalid_argument("population fitness cache out of sync");
  }
}

// Tracks the best member seen during a sweep, per the shared elitism rule:
// after each member's accept/reject resolution, the current member updates
// the running best on strict improvement.
struct BestTracker {
  SolutionVector best;
  double best_fitness;

  void offer(const SolutionVector& v, double f) {
    if (f > best_fitness) {
      best_fitness = f;
      best = v;
    }
  }
};

}  // namespace

SolutionVector levy_candidate(const SolutionVector& xi, int column,
                              double step, double alpha_scale,
                              const Bounds& bounds) {
  SolutionVector out = xi;
  out[column] = discretize(xi[column] + alpha_scale * step, bounds[column]);
  return out;
}

SolutionVector local_pollination_candidate(const SolutionVector& xi,
                                           const SolutionVector& xp,
                                           const SolutionVector& xq,
                                           double gamma,
                                           const Bounds& bounds) {
  SolutionVector out(xi.size());
  for (std::size_t d = 0; d < xi.size(); ++d) {
    out[d] = discretize(xi[d] + gamma * (xp[d] - xq[d]), bounds[d]);
  }
  return out;
}

SolutionVector global_pollination_candidate(
    const SolutionVector& xi, const SolutionVector& best, double rho,
    const std::vector<double>& levy_steps, const Bounds& bounds) {
  SolutionVector out(xi.size());
  for (std::size_t d = 0; d < xi.size(); ++d) {
    out[d] = discretize(xi[d] + rho * levy_steps[d] * (best[d] - xi[d]),
                        bounds[d]);
  }
  return out;
}

SolutionVector jaya_candidate(const SolutionVector& xi,
                              const SolutionVector& best,
                              const SolutionVector& poor, double phi,
                              double zeta, const Bounds& bounds) {
  SolutionVector out(xi.size());
  for (std::size_t d = 0; d < xi.size(); ++d) {
    out[d] = discretize(
        xi[d] + phi * (best[d] - xi[d]) - zeta * (poor[d] - xi[d]),
        bounds[d]);
  }
  return out;
}

OperatorOutcome levy_flight_perturbation(Population& pop, Evaluator& eval,
                                         const LevyParams& params,
                                         const Bounds& bounds, Rng& rng) {
  check_population(pop);
  OperatorOutcome out;
  BestTracker tracker{pop.members[0], pop.fitness[0]};
  const int dim = static_cast<int>(bounds.size());
  for (int i = 0; i < pop.size(); ++i) {
    const int column = rng.uniform_int(0, dim - 1);
    const double step = levy_step(params, rng);
    SolutionVector candidate =
        levy_candidate(pop.members[i], column, step, params.alpha_scale,
                       bounds);
    const double f = eval.evaluate(candidate);
    if (f > out.best_candidate_fitness) out.best_candidate_fitness = f;
    if (f > pop.fitness[i]) {
      pop.members[i] = std::move(candidate);
      pop.fitness[i] = f;
      out.improved = true;
    }
    tracker.offer(pop.members[i], pop.fitness[i]);
  }
  out.best = tracker.best;
  out.best_fitness = tracker.best_fitness;
  return out;
}

OperatorOutcome local_pollination(Population& pop, Evaluator& eval,
                                  const Bounds& bounds, Rng& rng) {
  check_population(pop);
  OperatorOutcome out;
  if (pop.size() < 2) {
    // No two distinct peers to draw from; identity by contract.
    out.best = pop.members[0];
    out.best_fitness = pop.fitness[0];
    out.degenerate = true;
    return out;
  }
  BestTracker tracker{pop.members[0], pop.fitness[0]};
  for (int i = 0; i < pop.size(); ++i) {
    const int p = rng.uniform_int(0, pop.size() - 1);
    int q = rng.uniform_int(0, pop.size() - 1);
    while (q == p) q = rng.uniform_int(0, pop.size() - 1);
    const double gamma = rng.uniform_open01();
    SolutionVector candidate = local_pollination_candidate(
        pop.members[i], pop.members[p], pop.members[q], gamma, bounds);
    const double f = eval.evaluate(candidate);
    if (f > out.best_candidate_fitness) out.best_candidate_fitness = f;
    if (f > pop.fitness[i]) {
      pop.members[i] = std::move(candidate);
      pop.fitness[i] = f;
      out.improved = true;
    }
    tracker.offer(pop.members[i], pop.fitness[i]);
  }
  out.best = tracker.best;
  out.best_fitness = tracker.best_fitness;
  return out;
}

OperatorOutcome global_pollination(Population& pop, Evaluator& eval,
                                   const SolutionVector& best,
                                   double best_fitness,
                                   const LevyParams& params,
                                   const Bounds& bounds, Rng& rng) {
  check_population(pop);
  if (best.size() != bounds.size()) {
    throw std::invalid_argument("global_pollination: best has wrong size");
  }
  OperatorOutcome out;
  BestTracker tracker{best, best_fitness};
  const int dim = static_cast<int>(bounds.size());
  std::vector<double> steps(dim);
  for (int i = 0; i < pop.size(); ++i) {
    const double rho = rng.uniform_open01();
    for (int d = 0; d < dim; ++d) steps[d] = levy_step(params, rng);
    SolutionVector candidate = global_pollination_candidate(
        pop.members[i], tracker.best, rho, steps, bounds);
    const double f = eval.evaluate(candidate);
    if (f > out.best_candidate_fitness) out.best_candidate_fitness = f;
    if (f > pop.fitness[i]) {
      pop.members[i] = std::move(candidate);
      pop.fitness[i] = f;
      out.improved = true;
    }
    tracker.offer(pop.members[i], pop.fitness[i]);
  }
  out.best = tracker.best;
  out.best_fitness = tracker.best_fitness;
  return out;
}

OperatorOutcome jaya(Population& pop, Evaluator& eval, const Bounds& bounds,
                     Rng& rng) {
  check_population(pop);
  OperatorOutcome out;
  BestTracker tracker{pop.members[0], pop.fitness[0]};
  SolutionVector poor = pop.members[0];
  double poor_fitness = pop.fitness[0];
  for (int i = 0; i < pop.size(); ++i) {
    const double phi = rng.uniform_open01();
    const double zeta = rng.uniform_open01();
    SolutionVector candidate = jaya_candidate(pop.members[i], tracker.best,
                                              poor, phi, zeta, bounds);
    const double f = eval.evaluate(candidate);
    if (f > out.best_candidate_fitness) out.best_candidate_fitness = f;
    if (f > pop.fitness[i]) {
      pop.members[i] = std::move(candidate);
      pop.fitness[i] = f;
      out.improved = true;
      tracker.offer(pop.members[i], pop.fitness[i]);
    } else {
      tracker.offer(pop.members[i], pop.fitness[i]);
      if (pop.fitness[i] < poor_fitness) {
        poor_fitness = pop.fitness[i];
        poor = pop.members[i];
      }
    }
  }
  out.best = tracker.best;
  out.best_fitness = tracker.best_fitness;
  out.poor = std::move(poor);
  out.poor_fitness = poor_fitness;
  return out;
}

OperatorOutcome apply_operator(OperatorId op, Population& pop,
                               Evaluator& eval, const LevyParams& params,
                               const Bounds& bounds, Rng& rng) {
  switch (op) {
    case OperatorId::kLevyPerturbation:
      return levy_flight_perturbation(pop, eval, params, bounds, rng);
    case OperatorId::kLocalPollination:
      return local_pollination(pop, eval, bounds, rng);
    case OperatorId::kGlobalPollination: {
      if (eval.has_best()) {
        return global_pollination(pop, eval, eval.best(),
                                  eval.best_fitness(), params, bounds, rng);
      }
      // Fresh evaluator: fall back to the population's own best.
      int arg = 0;
      for (int i = 1; i < pop.size(); ++i) {
        if (pop.fitness[i] > pop.fitness[arg]) arg = i;
      }
      return global_pollination(pop, eval, pop.members[arg],
                                pop.fitness[arg], params, bounds, rng);
    }
    case OperatorId::kJaya:
      return jaya(pop, eval, bounds, rng);
  }
  throw std::invalid_argument("apply_operator: unknown operator");
}

}  // namespace qemcq
