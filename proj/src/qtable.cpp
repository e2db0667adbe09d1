#include "qemcq/qtable.hpp"

#include <algorithm>
#include <stdexcept>

namespace qemcq {

const char* operator_name(OperatorId op) {
  switch (op) {
    case OperatorId::kLevyPerturbation: return "levy_perturbation";
    case OperatorId::kLocalPollination: return "local_pollination";
    case OperatorId::kGlobalPollination: return "global_pollination";
    case OperatorId::kJaya: return "jaya";
  }
  return "unknown";
}

QTable::QTable(double discount) : discount_(discount) {
  if (discount < 0.0 || discount > 1.0) {
    throw std::invalid_argument("QTable: discount outside [0, 1]");
  }
}

double QTable::at(OperatorId state, OperatorId action) const {
  return values_[static_cast<int>(state)][static_cast<int>(action)];
}

void QTable::set(OperatorId state, OperatorId action, double value) {
  values_[static_cast<int>(state)][static_cast<int>(action)] = value;
}

void QTable::update(OperatorId state, OperatorId action, double reward,
                    double alpha) {
  const double current = at(state, action);
  const double target = reward + discount_ * row_max(action);
  set(state, action, current + alpha * (target - current));
}

double QTable::row_max(OperatorId state) const {
  const auto& row = values_[static_cast<int>(state)];
  return *std::max_element(row.begin(), row.end());
}

OperatorId QTable::select_action(OperatorId state, Rng& rng) const {
  const auto& row = values_[static_cast<int>(state)];
  const double best = *std::max_element(row.begin(), row.end());
  int ties[kOperatorCount];
  int tie_count = 0;
  for (int a = 0; a < kOperatorCount; ++a) {
    if (row[a] == best) ties[tie_count++] = a;
  }
  const int pick =
      tie_count == 1 ? ties[0] : ties[rng.uniform_int(0, tie_count - 1)];
  return static_cast<OperatorId>(pick);
}

double learning_rate(int t, int max_t) {
  if (max_t <= 0) throw std::invalid_argument("learning_rate: max_t <= 0");
  if (t < 0 || t > max_t) {
    throw std::invalid_argument("learning_rate: t outside [0, max_t]");
  }
  return 1.0 - 0.9 * static_cast<double>(t) / static_cast<double>(max_t);
}

double reward(bool improved) { return improved ? 1.0 : -1.0; }

}  // namespace qemcq
