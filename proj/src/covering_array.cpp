#include "qemcq/covering_array.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qemcq/rng.hpp"

namespace qemcq {

namespace {

// Calls fn(columns) for every size-t subset of {0..k-1}, in lexicographic
// order.
void for_each_column_subset(int k, int t,
                            const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> columns(t);
  for (int i = 0; i < t; ++i) columns[i] = i;
  while (true) {
    fn(columns);
    int i = t - 1;
    while (i >= 0 && columns[i] == k - t + i) --i;
    if (i < 0) break;
    ++columns[i];
    for (int j = i + 1; j < t; ++j) columns[j] = columns[j - 1] + 1;
  }
}

}  // namespace

void validate_model(const ParameterModel& model) {
  const int k = model.parameter_count();
  if (k < 1) throw std::invalid_argument("model has no parameters");
  if (model.strength < 2) {
    throw std::invalid_argument("interaction strength must be >= 2");
  }
  if (model.strength > k) {
    throw std::invalid_argument(
        "interaction strength exceeds the parameter count");
  }
  for (int v : model.levels) {
    if (v < 2) throw std::invalid_argument("parameter level count must be >= 2");
  }
}

long long interaction_count(const ParameterModel& model) {
  validate_model(model);
  long long total = 0;
  for_each_column_subset(model.parameter_count(), model.strength,
                         [&](const std::vector<int>& columns) {
                           long long prod = 1;
                           for (int c : columns) prod *= model.levels[c];
                           total += prod;
                         });
  return total;
}

long long size_lower_bound(const ParameterModel& model) {
  validate_model(model);
  std::vector<int> sorted = model.levels;
  std::sort(sorted.begin(), sorted.end(), std::greater<int>());
  long long prod = 1;
  for (int i = 0; i < model.strength; ++i) prod *= sorted[i];
  return prod;
}

InteractionSet::InteractionSet(const ParameterModel& model)
    : levels_(model.levels) {
  validate_model(model);
  for_each_column_subset(
      model.parameter_count(), model.strength,
      [&](const std::vector<int>& columns) {
        ColumnSubset subset;
        subset.columns = columns;
        subset.radix.assign(columns.size(), 1);
        for (int j = static_cast<int>(columns.size()) - 2; j >= 0; --j) {
          subset.radix[j] = subset.radix[j + 1] * levels_[columns[j + 1]];
        }
        const long long count = subset.radix[0] * levels_[columns[0]];
        std::unordered_set<long long> codes;
        codes.reserve(static_cast<std::size_t>(count) * 2);
        for (long long code = 0; code < count; ++code) codes.insert(code);
        subsets_.push_back(std::move(subset));
        uncovered_.push_back(std::move(codes));
        initial_count_ += count;
      });
  remaining_ = initial_count_;
}

long long InteractionSet::code_for(const ColumnSubset& subset,
                                   const SolutionVector& row) const {
  long long code = 0;
  for (std::size_t j = 0; j < subset.columns.size(); ++j) {
    code += subset.radix[j] * row[subset.columns[j]];
  }
  return code;
}

InteractionTuple InteractionSet::decode(int subset_index,
                                        long long code) const {
  const ColumnSubset& subset = subsets_[subset_index];
  InteractionTuple tuple;
  tuple.columns = subset.columns;
  tuple.values.resize(subset.columns.size());
  for (std::size_t j = 0; j < subset.columns.size(); ++j) {
    tuple.values[j] = static_cast<int>(code / subset.radix[j]);
    code %= subset.radix[j];
  }
  return tuple;
}

int InteractionSet::active_subsets() const {
  int active = 0;
  for (const auto& codes : uncovered_) {
    if (!codes.empty()) ++active;
  }
  return active;
}

int InteractionSet::count_covered(const SolutionVector& row) const {
  int total = 0;
  for (std::size_t s = 0; s < subsets_.size(); ++s) {
    if (uncovered_[s].empty()) continue;
    if (uncovered_[s].count(code_for(subsets_[s], row)) != 0) ++total;
  }
  return total;
}

int InteractionSet::count_covered_parallel(const SolutionVector& row) const {
  int total = 0;
  const int n = static_cast<int>(subsets_.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : total)
#endif
  for (int s = 0; s < n; ++s) {
    if (uncovered_[s].empty()) continue;
    if (uncovered_[s].count(code_for(subsets_[s], row)) != 0) ++total;
  }
  return total;
}

long long InteractionSet::remove_covered(const SolutionVector& row) {
  long long removed = 0;
  for (std::size_t s = 0; s < subsets_.size(); ++s) {
    if (uncovered_[s].empty()) continue;
    removed += static_cast<long long>(
        uncovered_[s].erase(code_for(subsets_[s], row)));
  }
  remaining_ -= removed;
  return removed;
}

InteractionTuple InteractionSet::first_remaining() const {
  for (std::size_t s = 0; s < uncovered_.size(); ++s) {
    if (uncovered_[s].empty()) continue;
    // Smallest code, so the pick does not depend on hash iteration order.
    const long long code =
        *std::min_element(uncovered_[s].begin(), uncovered_[s].end());
    return decode(static_cast<int>(s), code);
  }
  throw std::logic_error("first_remaining on empty interaction set");
}

std::vector<InteractionTuple> InteractionSet::remaining_tuples() const {
  std::vector<InteractionTuple> tuples;
  tuples.reserve(static_cast<std::size_t>(remaining_));
  for (std::size_t s = 0; s < uncovered_.size(); ++s) {
    std::vector<long long> codes(uncovered_[s].begin(), uncovered_[s].end());
    std::sort(codes.begin(), codes.end());
    for (long long code : codes) {
      tuples.push_back(decode(static_cast<int>(s), code));
    }
  }
  return tuples;
}

int row_fitness(const SolutionVector& row, const InteractionSet& uncovered) {
  return uncovered.count_covered(row);
}

namespace {

bool use_parallel_kernel(CoverageKernel kernel, int subset_count) {
  switch (kernel) {
    case CoverageKernel::kSerial: return false;
    case CoverageKernel::kParallel: return true;
    case CoverageKernel::kAuto:
#ifdef _OPENMP
      return subset_count >= 512 && omp_get_max_threads() > 1;
#else
      (void)subset_count;
      return false;
#endif
  }
  return false;
}

}  // namespace

GenerateResult generate(const ParameterModel& model,
                        const GenerateConfig& config) {
  validate_model(model);
  GenerateResult result;
  result.array.model = model;

  InteractionSet uncovered(model);
  Rng master(config.seed);
  const int k = model.parameter_count();

  Bounds bounds(k);
  for (int i = 0; i < k; ++i) bounds[i] = ValueRange{0, model.levels[i] - 1};
  const bool parallel =
      use_parallel_kernel(config.kernel, uncovered.active_subsets());

  while (!uncovered.empty()) {
    RunConfig run = config.run;
    run.seed = master.next_u64();
    run.record_trace =
        config.record_first_round_trace && result.rounds == 0;

    SearchProblem problem;
    problem.bounds = bounds;
    problem.fitness = [&uncovered, parallel](const SolutionVector& row) {
      return static_cast<double>(parallel
                                     ? uncovered.count_covered_parallel(row)
                                     : uncovered.count_covered(row));
    };
    // No single row can beat the number of still-active column subsets.
    problem.target_fitness = static_cast<double>(uncovered.active_subsets());

    const RunResult round = run_search(problem, run);
    result.evaluations_used += round.evaluations_used;
    if (run.record_trace) result.first_round_trace = round.trace;

    SolutionVector row = round.best;
    if (round.best_fitness < 1.0) {
      // The search found no covering row; place one remaining tuple
      // directly and fill the other columns at random.
      const InteractionTuple tuple = uncovered.first_remaining();
      row.resize(k);
      for (int i = 0; i < k; ++i) {
        row[i] = master.uniform_int(bounds[i].lo, bounds[i].hi);
      }
      for (std::size_t j = 0; j < tuple.columns.size(); ++j) {
        row[tuple.columns[j]] = tuple.values[j];
      }
      ++result.fallback_rows;
    }

    uncovered.remove_covered(row);
    result.array.rows.push_back(std::move(row));
    ++result.rounds;
  }
  return result;
}

void write_csv(std::ostream& out, const CoveringArray& array) {
  const int k = array.model.parameter_count();
  for (int i = 0; i < k; ++i) {
    if (i > 0) out << ',';
    out << 'p' << (i + 1);
  }
  out << '\n';
  for (const SolutionVector& row : array.rows) {
    for (int i = 0; i < k; ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

CoveringArray read_csv(std::istream& in, const ParameterModel& model) {
  validate_model(model);
  const int k = model.parameter_count();
  CoveringArray array;
  array.model = model;

  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("array csv: missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::string expected;
  for (int i = 0; i < k; ++i) {
    if (i > 0) expected += ',';
    expected += 'p' + std::to_string(i + 1);
  }
  if (line != expected) {
    throw std::runtime_error("array csv: bad header '" + line +
                             "', expected '" + expected + "'");
  }

  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != k) {
      throw std::runtime_error("array csv line " +
                               std::to_string(line_number) + ": expected " +
                               std::to_string(k) + " cells, got " +
                               std::to_string(cells.size()));
    }
    SolutionVector row(k);
    for (int i = 0; i < k; ++i) {
      std::size_t pos = 0;
      int value = 0;
      try {
        value = std::stoi(cells[i], &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != cells[i].size() || cells[i].empty()) {
        throw std::runtime_error("array csv line " +
                                 std::to_string(line_number) +
                                 ": non-integer cell '" + cells[i] + "'");
      }
      if (value < 0 || value >= model.levels[i]) {
        throw std::runtime_error("array csv line " +
                                 std::to_string(line_number) + ": value " +
                                 std::to_string(value) +
                                 " out of range for p" + std::to_string(i + 1));
      }
      row[i] = value;
    }
    array.rows.push_back(std::move(row));
  }
  return array;
}

}  // namespace qemcq
