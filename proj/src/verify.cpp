#include "qemcq/verify.hpp"

#include <stdexcept>
#include <string>

namespace qemcq {

// Deliberately brute force and structurally independent of InteractionSet:
// walks every column subset with its own enumerator, every value
// combination with a plain odometer, and scans the rows for each one.

VerifyReport verify_coverage(const CoveringArray& array) {
  validate_model(array.model);
  const int k = array.model.parameter_count();
  const int t = array.model.strength;
  const std::vector<int>& levels = array.model.levels;

  for (std::size_t r = 0; r < array.rows.size(); ++r) {
    const SolutionVector& row = array.rows[r];
    if (static_cast<int>(row.size()) != k) {
      throw std::invalid_argument("row " + std::to_string(r) +
                                  " has wrong length");
    }
    for (int i = 0; i < k; ++i) {
      if (row[i] < 0 || row[i] >= levels[i]) {
        throw std::invalid_argument("row " + std::to_string(r) +
                                    " has out-of-range value at p" +
                                    std::to_string(i + 1));
      }
    }
  }

  VerifyReport report;
  std::vector<int> columns(t);
  for (int i = 0; i < t; ++i) columns[i] = i;
  while (true) {
    std::vector<int> values(t, 0);
    while (true) {
      bool found = false;
      for (const SolutionVector& row : array.rows) {
        bool match = true;
        for (int j = 0; j < t; ++j) {
          if (row[columns[j]] != values[j]) {
            match = false;
            break;
          }
        }
        if (match) {
          found = true;
          break;
        }
      }
      if (!found) {
        report.covered = false;
        report.missing.push_back(InteractionTuple{columns, values});
      }
      int j = t - 1;
      while (j >= 0 && values[j] == levels[columns[j]] - 1) {
        values[j] = 0;
        --j;
      }
      if (j < 0) break;
      ++values[j];
    }
    int i = t - 1;
    while (i >= 0 && columns[i] == k - t + i) --i;
    if (i < 0) break;
    ++columns[i];
    for (int j = i + 1; j < t; ++j) columns[j] = columns[j - 1] + 1;
  }
  return report;
}

}  // namespace qemcq
