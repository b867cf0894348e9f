#pragma once

#include "triplex/labeled.hpp"

namespace triplex {

/// Revealed comparative advantage: each cell's share of its row total,
/// relative to the column's share of the grand total. Columns with zero
/// total yield 0; a row with zero total is an error (AllZeroRow).
ValuedMatrix rca(const ValuedMatrix& x);

struct BinarizeResult {
  BinaryIncidence matrix;
  std::vector<std::string> removed_rows;
  std::vector<std::string> removed_cols;
};

/// Thresholds an RCA matrix into a pruned incidence matrix. The comparison
/// is inclusive: a cell equal to the threshold maps to 1.
BinarizeResult binarize(const ValuedMatrix& r, double threshold = 1.0);

}  // namespace triplex
