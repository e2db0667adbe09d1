#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_set>
#include <vector>

#include "qemcq/search.hpp"
#include "qemcq/solution.hpp"

namespace qemcq {

// Mixed-level covering array model: `strength` is the interaction strength t,
// levels[i] is the number of values of parameter i (2 <= t <= k, v_i >= 2).
struct ParameterModel {
  int strength = 2;
  std::vector<int> levels;

  int parameter_count() const { return static_cast<int>(levels.size()); }
};

void validate_model(const ParameterModel& model);

// Total t-wise interactions: sum over all C(k,t) column subsets of the
// product of the subset's level counts.
long long interaction_count(const ParameterModel& model);

// Product of the t largest level counts; no covering array can be smaller.
long long size_lower_bound(const ParameterModel& model);

struct InteractionTuple {
  std::vector<int> columns;  // strictly increasing parameter indices
  std::vector<int> values;   // values[j] for parameter columns[j]
};

// The not-yet-covered interactions, organized per column subset with tuples
// packed into mixed-radix codes for O(1) membership tests.
class InteractionSet {
 public:
  explicit InteractionSet(const ParameterModel& model);

  long long initial_count() const { return initial_count_; }
  long long remaining() const { return remaining_; }
  bool empty() const { return remaining_ == 0; }

  // Number of column subsets that still have at least one uncovered tuple;
  // an upper bound on any single row's coverage count.
  int active_subsets() const;

  // How many uncovered interactions `row` covers. The parallel variant
  // splits the column subsets across OpenMP threads; both return identical
  // counts (integer reduction).
  int count_covered(const SolutionVector& row) const;
  int count_covered_parallel(const SolutionVector& row) const;

  // Removes the interactions `row` covers; returns how many were removed.
  long long remove_covered(const SolutionVector& row);

  // First uncovered tuple in (subset, code) order; deterministic.
  InteractionTuple first_remaining() const;

  std::vector<InteractionTuple> remaining_tuples() const;

 private:
  struct ColumnSubset {
    std::vector<int> columns;
    std::vector<long long> radix;  // mixed-radix weights, last column = 1
  };

  long long code_for(const ColumnSubset& subset,
                     const SolutionVector& row) const;
  InteractionTuple decode(int subset_index, long long code) const;

  std::vector<int> levels_;
  std::vector<ColumnSubset> subsets_;
  std::vector<std::unordered_set<long long>> uncovered_;
  long long initial_count_ = 0;
  long long remaining_ = 0;
};

// Serial reference fitness: identical to uncovered.count_covered(row).
int row_fitness(const SolutionVector& row, const InteractionSet& uncovered);

struct CoveringArray {
  ParameterModel model;
  std::vector<SolutionVector> rows;

  int size() const { return static_cast<int>(rows.size()); }
};

enum class CoverageKernel { kSerial, kParallel, kAuto };

struct GenerateConfig {
  RunConfig run;              // per-round search settings; run.seed is unused
  std::uint64_t seed = 1;     // master seed; round seeds derive from it
  CoverageKernel kernel = CoverageKernel::kAuto;
  bool record_first_round_trace = false;
};

struct GenerateResult {
  CoveringArray array;
  long long evaluations_used = 0;
  int rounds = 0;
  int fallback_rows = 0;  // rounds salvaged by direct tuple placement
  std::vector<double> first_round_trace;
};

// One-test-at-a-time greedy construction: each round runs a fresh search
// for the row covering the most remaining interactions, appends it, and
// removes what it covers, until nothing remains.
GenerateResult generate(const ParameterModel& model,
                        const GenerateConfig& config);

// CSV with header p1..pk, one row per line.
void write_csv(std::ostream& out, const CoveringArray& array);

// Parses a CSV produced by write_csv; throws std::runtime_error on malformed
// input (bad header, non-integer cells, wrong row length, out-of-range
// values).
CoveringArray read_csv(std::istream& in, const ParameterModel& model);

}  // namespace qemcq
