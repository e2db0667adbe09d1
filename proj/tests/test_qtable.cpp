#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "qemcq/qtable.hpp"

using namespace qemcq;

namespace {

constexpr OperatorId kS = OperatorId::kLevyPerturbation;
constexpr OperatorId kA = OperatorId::kLocalPollination;
constexpr OperatorId kB = OperatorId::kGlobalPollination;

}  // namespace

TEST_CASE("learning rate decays linearly from 1.0 to 0.1") {
  CHECK(learning_rate(0, 2500) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(learning_rate(2500, 2500) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(learning_rate(1250, 2500) == doctest::Approx(0.55).epsilon(1e-12));
  CHECK_THROWS_AS(learning_rate(-1, 2500), std::invalid_argument);
  CHECK_THROWS_AS(learning_rate(2501, 2500), std::invalid_argument);
  CHECK_THROWS_AS(learning_rate(1, 0), std::invalid_argument);
}

TEST_CASE("reward is the improvement sign") {
  CHECK(reward(true) == 1.0);
  CHECK(reward(false) == -1.0);
}

TEST_CASE("qtable construction and accessors") {
  QTable table(0.8);
  CHECK(table.discount() == 0.8);
  for (int s = 0; s < kOperatorCount; ++s) {
    for (int a = 0; a < kOperatorCount; ++a) {
      CHECK(table.at(static_cast<OperatorId>(s), static_cast<OperatorId>(a)) ==
            0.0);
    }
  }
  table.set(kS, kA, 2.5);
  CHECK(table.at(kS, kA) == 2.5);
  CHECK(table.row_max(kS) == 2.5);
  CHECK_THROWS_AS(QTable(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(QTable(1.1), std::invalid_argument);
}

// Three worked single-step backups with discount 0.10 and alpha 0.70;
// the rounded values are -0.26, -0.33, and 1.06.
TEST_CASE("qtable update reproduces worked examples") {
  SUBCASE("penalized transition from 1.25 with next-state max 1.00") {
    QTable table(0.10);
    table.set(kS, kA, 1.25);
    table.set(kA, kB, 1.00);
    table.update(kS, kA, -1.0, 0.70);
    CHECK(table.at(kS, kA) == doctest::Approx(-0.255).epsilon(1e-12));
    CHECK(std::fabs(table.at(kS, kA) - (-0.255)) < 0.005);
    CHECK(std::fabs(table.at(kS, kA) - (-0.26)) < 0.01);
  }
  SUBCASE("penalized transition from 1.00 with next-state max 1.00") {
    QTable table(0.10);
    table.set(kS, kA, 1.00);
    table.set(kA, kB, 1.00);
    table.update(kS, kA, -1.0, 0.70);
    CHECK(table.at(kS, kA) == doctest::Approx(-0.33).epsilon(1e-12));
    CHECK(std::fabs(table.at(kS, kA) - (-0.33)) < 0.005);
  }
  SUBCASE("rewarded transition from 1.00 with next-state max 0.95") {
    QTable table(0.10);
    table.set(kS, kA, 1.00);
    table.set(kA, kB, 0.95);
    table.update(kS, kA, 1.0, 0.70);
    CHECK(table.at(kS, kA) == doctest::Approx(1.0665).epsilon(1e-12));
    CHECK(std::fabs(table.at(kS, kA) - 1.0665) < 0.005);
    CHECK(std::fabs(table.at(kS, kA) - 1.06) < 0.01);
  }
}

TEST_CASE("update drives toward reward plus discounted lookahead") {
  QTable table(0.8);
  table.set(kA, kB, 2.0);
  table.update(kS, kA, 1.0, 1.0);  // full step lands exactly on the target
  CHECK(table.at(kS, kA) == doctest::Approx(1.0 + 0.8 * 2.0).epsilon(1e-12));
}

TEST_CASE("select_action takes the argmax and breaks ties uniformly") {
  QTable table(0.8);
  Rng rng(7);

  SUBCASE("unique maximum") {
    table.set(kS, OperatorId::kJaya, 3.0);
    table.set(kS, kA, 1.0);
    for (int i = 0; i < 50; ++i) {
      CHECK(table.select_action(kS, rng) == OperatorId::kJaya);
    }
  }

  SUBCASE("full tie spreads over all four operators") {
    int counts[kOperatorCount] = {0, 0, 0, 0};
    for (int i = 0; i < 4000; ++i) {
      ++counts[static_cast<int>(table.select_action(kS, rng))];
    }
    for (int a = 0; a < kOperatorCount; ++a) {
      CHECK(counts[a] > 800);
      CHECK(counts[a] < 1200);
    }
  }

  SUBCASE("two-way tie only picks the tied pair") {
    table.set(kS, kA, 5.0);
    table.set(kS, kB, 5.0);
    int counts[kOperatorCount] = {0, 0, 0, 0};
    for (int i = 0; i < 2000; ++i) {
      ++counts[static_cast<int>(table.select_action(kS, rng))];
    }
    CHECK(counts[static_cast<int>(kS)] == 0);
    CHECK(counts[static_cast<int>(OperatorId::kJaya)] == 0);
    CHECK(counts[static_cast<int>(kA)] > 700);
    CHECK(counts[static_cast<int>(kB)] > 700);
  }
}

TEST_CASE("operator names are stable") {
  CHECK(std::string(operator_name(OperatorId::kLevyPerturbation)) ==
        "levy_perturbation");
  CHECK(std::string(operator_name(OperatorId::kJaya)) == "jaya");
}
