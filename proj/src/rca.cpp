#include "triplex/rca.hpp"

namespace triplex {

ValuedMatrix rca(const ValuedMatrix& x) {
  const Eigen::MatrixXd& v = x.values();
  const double grand = v.sum();
  if (v.rows() == 0 || v.cols() == 0 || grand <= 0.0) {
    throw EmptyMatrix("cannot compute comparative advantage of an all-zero matrix");
  }
  Eigen::VectorXd row_tot = v.rowwise().sum();
  Eigen::VectorXd col_tot = v.colwise().sum();
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    if (row_tot(i) <= 0.0) {
      throw AllZeroRow("row '" + x.row_labels()[static_cast<size_t>(i)] +
                       "' has zero total; its share vector is undefined");
    }
  }
  Eigen::MatrixXd out(v.rows(), v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    if (col_tot(j) == 0.0) {
      out.col(j).setZero();  // nobody holds this category; 0/0 -> 0
      continue;
    }
    const double world_share = col_tot(j) / grand;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      out(i, j) = (v(i, j) / row_tot(i)) / world_share;
    }
  }
  return ValuedMatrix(x.row_labels(), x.col_labels(), std::move(out), x.row_kind(), x.col_kind());
}

BinarizeResult binarize(const ValuedMatrix& r, double threshold) {
  Eigen::MatrixXd m =
      (r.values().array() >= threshold).cast<double>();
  BinaryIncidence raw(r.row_labels(), r.col_labels(), std::move(m), r.row_kind(), r.col_kind());
  PruneResult pruned = prune(raw);
  return BinarizeResult{std::move(pruned.matrix), std::move(pruned.removed_rows),
                        std::move(pruned.removed_cols)};
}

}  // namespace triplex
