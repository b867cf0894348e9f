#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "triplex/errors.hpp"

namespace triplex {

enum class AxisKind { Country, Product, Technology };

enum class Axis { Rows, Cols };

std::string to_string(AxisKind kind);

/// Labeled nonnegative matrix of export values or patent counts.
/// Immutable after construction; all views return const references.
class ValuedMatrix {
 public:
  ValuedMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
               Eigen::MatrixXd values, AxisKind row_kind, AxisKind col_kind);

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  const Eigen::MatrixXd& values() const { return values_; }
  AxisKind row_kind() const { return row_kind_; }
  AxisKind col_kind() const { return col_kind_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

  /// Submatrix with the given row/column indices, in the given order.
  ValuedMatrix select(const std::vector<Eigen::Index>& row_idx,
                      const std::vector<Eigen::Index>& col_idx) const;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  Eigen::MatrixXd values_;
  AxisKind row_kind_;
  AxisKind col_kind_;
};

/// Labeled 0/1 incidence matrix. Construction checks that every entry is
/// exactly 0 or 1; freedom from all-zero rows/columns is established by
/// prune() and required (not re-checked) by downstream operations.
class BinaryIncidence {
 public:
  BinaryIncidence(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                  Eigen::MatrixXd values, AxisKind row_kind, AxisKind col_kind);

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  const Eigen::MatrixXd& values() const { return values_; }
  AxisKind row_kind() const { return row_kind_; }
  AxisKind col_kind() const { return col_kind_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

  /// True when the matrix has no all-zero row and no all-zero column.
  bool is_pruned() const;

  BinaryIncidence select(const std::vector<Eigen::Index>& row_idx,
                         const std::vector<Eigen::Index>& col_idx) const;

  BinaryIncidence transposed() const;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  Eigen::MatrixXd values_;
  AxisKind row_kind_;
  AxisKind col_kind_;
};

enum class MarginKind {
  CountryDiversity,      // k_{c,0}
  ProductUbiquity,       // k_{p,0}
  CountryTechDiversity,  // rho_{c,0}
  TechUbiquity,          // rho_{t,0}
  ProductSophistication, // eta_{p,0}
  TechProductUbiquity,   // eta_{t,0}
};

std::string to_string(MarginKind kind);

/// Labeled diversity/ubiquity vector (entries are counts at iteration 0,
/// nonnegative reals after reflections).
struct MarginVector {
  std::vector<std::string> labels;
  Eigen::VectorXd values;
  MarginKind kind;
};

/// Margin semantics for a side of an incidence matrix, given the axis kind
/// of that side and of the opposite side.
MarginKind margin_kind(AxisKind of_side, AxisKind other_side);

enum class IndexKind { ECI, PCI, PatCI, TCI, PTCI, TPCI, THCI };

std::string to_string(IndexKind kind);

/// Standardized complexity index over a set of entities. Construction
/// enforces mean 0 and population standard deviation 1 (within 1e-9).
class ComplexityIndex {
 public:
  ComplexityIndex(std::vector<std::string> labels, Eigen::VectorXd values, IndexKind kind,
                  int year);

  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::VectorXd& values() const { return values_; }
  IndexKind kind() const { return kind_; }
  int year() const { return year_; }

 private:
  std::vector<std::string> labels_;
  Eigen::VectorXd values_;
  IndexKind kind_;
  int year_;
};

/// One entity's index values over the years where they are present.
struct YearSeries {
  std::string entity;
  std::string kind;
  std::vector<int> years;
  std::vector<double> values;
};

/// Entity x year grid of index values; cells may be absent. Absent is
/// distinct from zero.
class IndexPanel {
 public:
  /// `values` uses NaN for absent cells. Years must be strictly increasing,
  /// entities unique.
  IndexPanel(std::vector<std::string> entities, std::vector<int> years, Eigen::MatrixXd values,
             std::string kind = "");

  const std::vector<std::string>& entities() const { return entities_; }
  const std::vector<int>& years() const { return years_; }
  const std::string& kind() const { return kind_; }

  bool has(const std::string& entity, int year) const;
  std::optional<double> at(const std::string& entity, int year) const;

  /// All present (year, value) pairs for one entity, in year order.
  YearSeries series(const std::string& entity) const;

  /// All entities with a present value in `year`, with their values,
  /// in the panel's entity order.
  std::vector<std::pair<std::string, double>> cross_section(int year) const;

 private:
  std::vector<std::string> entities_;
  std::vector<int> years_;
  Eigen::MatrixXd values_;
  std::string kind_;
};

/// Square labeled matrix over a single entity set (country-country couplings).
struct LabeledSquare {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
  AxisKind kind = AxisKind::Country;
};

struct PruneResult {
  BinaryIncidence matrix;
  std::vector<std::string> removed_rows;
  std::vector<std::string> removed_cols;
};

/// Removes all-zero rows and columns until none remain; label order of the
/// survivors is preserved. Throws EmptyMatrix when nothing survives.
PruneResult prune(const BinaryIncidence& m);

/// Restricts one axis of each input to the (lexicographically sorted)
/// intersection of the paired axes' labels. Throws NoOverlap when the
/// intersection is empty.
std::pair<ValuedMatrix, ValuedMatrix> align(const ValuedMatrix& a, Axis axis_a,
                                            const ValuedMatrix& b, Axis axis_b);
std::pair<BinaryIncidence, BinaryIncidence> align(const BinaryIncidence& a, Axis axis_a,
                                                  const BinaryIncidence& b, Axis axis_b);

namespace detail {

/// Indices of `wanted` labels inside `labels` (all must be present).
std::vector<Eigen::Index> label_indices(const std::vector<std::string>& labels,
                                        const std::vector<std::string>& wanted);

/// Sorted intersection of two label sets; throws NoOverlap when empty.
std::vector<std::string> sorted_intersection(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b);

void check_unique(const std::vector<std::string>& labels, const char* what);

}  // namespace detail

}  // namespace triplex
