#pragma once

#include <array>

#include "qemcq/rng.hpp"

namespace qemcq {

enum class OperatorId : int {
  kLevyPerturbation = 0,
  kLocalPollination = 1,
  kGlobalPollination = 2,
  kJaya = 3,
};

inline constexpr int kOperatorCount = 4;

const char* operator_name(OperatorId op);

// State-action value table over the operator set. States and actions both
// range over the four operators: the state is the operator executed last,
// the action is the operator executed next.
class QTable {
 public:
  explicit QTable(double discount = 0.8);

  double discount() const { return discount_; }
  double at(OperatorId state, OperatorId action) const;
  void set(OperatorId state, OperatorId action, double value);

  // One temporal-difference backup:
  //   Q(s,a) += alpha * (reward + discount * max_a' Q(a, a') - Q(s,a))
  // The next state is the action just executed.
  void update(OperatorId state, OperatorId action, double reward,
              double alpha);

  double row_max(OperatorId state) const;

  // Highest-valued action from `state`; ties broken uniformly at random
  // (the rng is consulted only when there is a tie).
  OperatorId select_action(OperatorId state, Rng& rng) const;

 private:
  double discount_;
  std::array<std::array<double, kOperatorCount>, kOperatorCount> values_{};
};

// Linearly decaying learning rate: 1 - 0.9 * t / max_t.
double learning_rate(int t, int max_t);

// +1 for an improving operator application, -1 otherwise.
double reward(bool improved);

}  // namespace qemcq
