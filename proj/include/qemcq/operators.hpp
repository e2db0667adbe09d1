#pragma once

#include <limits>
#include <vector>

#include "qemcq/evaluator.hpp"
#include "qemcq/levy.hpp"
#include "qemcq/qtable.hpp"
#include "qemcq/rng.hpp"
#include "qemcq/solution.hpp"

namespace qemcq {

// Population members with cached fitness; members[i] scored fitness[i].
struct Population {
  std::vector<SolutionVector> members;
  std::vector<double> fitness;

  int size() const { return static_cast<int>(members.size()); }
};

struct OperatorOutcome {
  SolutionVector best;           // best population member seen this call
  double best_fitness = -std::numeric_limits<double>::infinity();
  SolutionVector poor;           // worst member seen; tracked by jaya only
  double poor_fitness = std::numeric_limits<double>::infinity();
  // Best raw candidate proposed this call, before greedy acceptance. Feeds
  // the exponential Monte Carlo acceptance test in the main loop.
  double best_candidate_fitness = -std::numeric_limits<double>::infinity();
  bool improved = false;         // any member replaced by a better candidate
  bool degenerate = false;       // population too small for the operator
};

// Pure candidate constructions, one per operator. The sweep functions below
// draw the random factors and delegate here.
SolutionVector levy_candidate(const SolutionVector& xi, int column,
                              double step, double alpha_scale,
                              const Bounds& bounds);
SolutionVector local_pollination_candidate(const SolutionVector& xi,
                                           const SolutionVector& xp,
                                           const SolutionVector& xq,
                                           double gamma, const Bounds& bounds);
SolutionVector global_pollination_candidate(
    const SolutionVector& xi, const SolutionVector& best, double rho,
    const std::vector<double>& levy_steps, const Bounds& bounds);
SolutionVector jaya_candidate(const SolutionVector& xi,
                              const SolutionVector& best,
                              const SolutionVector& poor, double phi,
                              double zeta, const Bounds& bounds);

// Each sweep visits members in index order, proposes one candidate per
// member, and replaces the member only on strict fitness improvement.
// Draw order per member is documented in the implementation.

// Perturbs one random coordinate of each member by a scaled Levy step.
OperatorOutcome levy_flight_perturbation(Population& pop, Evaluator& eval,
                                         const LevyParams& params,
                                         const Bounds& bounds, Rng& rng);

// Moves each member along the difference of two distinct peers.
// Degenerate no-op (no evaluations) when the population has one member.
OperatorOutcome local_pollination(Population& pop, Evaluator& eval,
                                  const Bounds& bounds, Rng& rng);

// Moves each member toward `best` with per-coordinate Levy factors.
// `best`/`best_fitness` seed the running attractor, which elitism updates
// during the sweep.
OperatorOutcome global_pollination(Population& pop, Evaluator& eval,
                                   const SolutionVector& best,
                                   double best_fitness,
                                   const LevyParams& params,
                                   const Bounds& bounds, Rng& rng);

// Moves each member toward the running best and away from the running
// worst, both initialized from member 0.
OperatorOutcome jaya(Population& pop, Evaluator& eval, const Bounds& bounds,
                     Rng& rng);

OperatorOutcome apply_operator(OperatorId op, Population& pop,
                               Evaluator& eval, const LevyParams& params,
                               const Bounds& bounds, Rng& rng);

}  // namespace qemcq
