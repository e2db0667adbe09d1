#pragma once

#include <vector>

#include "qemcq/covering_array.hpp"

namespace qemcq {

struct VerifyReport {
  bool covered = true;
  std::vector<InteractionTuple> missing;
};

// Independent coverage check: enumerates every t-wise interaction directly
// and scans the rows for each one. Shares no bookkeeping with generate();
// this is the oracle the generator is judged against. Throws
// std::invalid_argument on rows of the wrong length or with out-of-range
// values.
VerifyReport verify_coverage(const CoveringArray& array);

}  // namespace qemcq
