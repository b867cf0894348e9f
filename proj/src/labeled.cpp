#include "triplex/labeled.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace triplex {

std::string to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::Country: return "country";
    case AxisKind::Product: return "product";
    case AxisKind::Technology: return "technology";
  }
  return "?";
}

std::string to_string(MarginKind kind) {
  switch (kind) {
    case MarginKind::CountryDiversity: return "country_diversity";
    case MarginKind::ProductUbiquity: return "product_ubiquity";
    case MarginKind::CountryTechDiversity: return "country_tech_diversity";
    case MarginKind::TechUbiquity: return "tech_ubiquity";
    case MarginKind::ProductSophistication: return "product_sophistication";
    case MarginKind::TechProductUbiquity: return "tech_product_ubiquity";
  }
  return "?";
}

std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::ECI: return "ECI";
    case IndexKind::PCI: return "PCI";
    case IndexKind::PatCI: return "PatCI";
    case IndexKind::TCI: return "TCI";
    case IndexKind::PTCI: return "PTCI";
    case IndexKind::TPCI: return "TPCI";
    case IndexKind::THCI: return "THCI";
  }
  return "?";
}

MarginKind margin_kind(AxisKind of_side, AxisKind other_side) {
  using A = AxisKind;
  if (of_side == A::Country && other_side == A::Product) return MarginKind::CountryDiversity;
  if (of_side == A::Product && other_side == A::Country) return MarginKind::ProductUbiquity;
  if (of_side == A::Country && other_side == A::Technology) return MarginKind::CountryTechDiversity;
  if (of_side == A::Technology && other_side == A::Country) return MarginKind::TechUbiquity;
  if (of_side == A::Product && other_side == A::Technology) return MarginKind::ProductSophistication;
  if (of_side == A::Technology && other_side == A::Product) return MarginKind::TechProductUbiquity;
  throw PreconditionError("margin_kind: axis pair (" + to_string(of_side) + ", " +
                          to_string(other_side) + ") has no margin semantics");
}

namespace detail {

void check_unique(const std::vector<std::string>& labels, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw InvalidMatrix(std::string(what) + " labels contain duplicate '" + l + "'");
    }
  }
}

std::vector<Eigen::Index> label_indices(const std::vector<std::string>& labels,
                                        const std::vector<std::string>& wanted) {
  std::unordered_map<std::string, Eigen::Index> pos;
  pos.reserve(labels.size());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(labels.size()); ++i) {
    pos.emplace(labels[i], i);
  }
  std::vector<Eigen::Index> out;
  out.reserve(wanted.size());
  for (const auto& w : wanted) {
    auto it = pos.find(w);
    if (it == pos.end()) {
      throw PreconditionError("label '" + w + "' not present");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::string> sorted_intersection(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b) {
  std::set<std::string> sa(a.begin(), a.end());
  std::vector<std::string> out;
  for (const auto& l : b) {
    if (sa.count(l)) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) {
    throw NoOverlap("label sets have empty intersection");
  }
  return out;
}

namespace {

void check_shape(const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                 const Eigen::MatrixXd& values) {
  if (values.rows() != static_cast<Eigen::Index>(rows.size()) ||
      values.cols() != static_cast<Eigen::Index>(cols.size())) {
    throw InvalidMatrix("matrix dimensions do not match label list lengths");
  }
}

Eigen::MatrixXd take(const Eigen::MatrixXd& values, const std::vector<Eigen::Index>& row_idx,
                     const std::vector<Eigen::Index>& col_idx) {
  Eigen::MatrixXd out(row_idx.size(), col_idx.size());
  for (size_t i = 0; i < row_idx.size(); ++i) {
    for (size_t j = 0; j < col_idx.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          values(row_idx[i], col_idx[j]);
    }
  }
  return out;
}

std::vector<std::string> take_labels(const std::vector<std::string>& labels,
                                     const std::vector<Eigen::Index>& idx) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(labels[static_cast<size_t>(i)]);
  return out;
}

}  // namespace

}  // namespace detail

ValuedMatrix::ValuedMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                           Eigen::MatrixXd values, AxisKind row_kind, AxisKind col_kind)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      values_(std::move(values)),
      row_kind_(row_kind),
      col_kind_(col_kind) {
  detail::check_shape(row_labels_, col_labels_, values_);
  detail::check_unique(row_labels_, "row");
  detail::check_unique(col_labels_, "column");
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      double v = values_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidMatrix("value at (" + row_labels_[static_cast<size_t>(i)] + ", " +
                            col_labels_[static_cast<size_t>(j)] +
                            ") is negative or non-finite");
      }
    }
  }
}

ValuedMatrix ValuedMatrix::select(const std::vector<Eigen::Index>& row_idx,
                                  const std::vector<Eigen::Index>& col_idx) const {
  return ValuedMatrix(detail::take_labels(row_labels_, row_idx),
                      detail::take_labels(col_labels_, col_idx),
                      detail::take(values_, row_idx, col_idx), row_kind_, col_kind_);
}

BinaryIncidence::BinaryIncidence(std::vector<std::string> row_labels,
                                 std::vector<std::string> col_labels, Eigen::MatrixXd values,
                                 AxisKind row_kind, AxisKind col_kind)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      values_(std::move(values)),
      row_kind_(row_kind),
      col_kind_(col_kind) {
  detail::check_shape(row_labels_, col_labels_, values_);
  detail::check_unique(row_labels_, "row");
  detail::check_unique(col_labels_, "column");
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      double v = values_(i, j);
      if (v != 0.0 && v != 1.0) {
        throw InvalidMatrix("incidence entry at (" + row_labels_[static_cast<size_t>(i)] + ", " +
                            col_labels_[static_cast<size_t>(j)] + ") is not 0 or 1");
      }
    }
  }
}

bool BinaryIncidence::is_pruned() const {
  if (values_.rows() == 0 || values_.cols() == 0) return false;
  return values_.rowwise().sum().minCoeff() > 0.0 && values_.colwise().sum().minCoeff() > 0.0;
}

BinaryIncidence BinaryIncidence::select(const std::vector<Eigen::Index>& row_idx,
                                        const std::vector<Eigen::Index>& col_idx) const {
  return BinaryIncidence(detail::take_labels(row_labels_, row_idx),
                         detail::take_labels(col_labels_, col_idx),
                         detail::take(values_, row_idx, col_idx), row_kind_, col_kind_);
}

BinaryIncidence BinaryIncidence::transposed() const {
  return BinaryIncidence(col_labels_, row_labels_, values_.transpose(), col_kind_, row_kind_);
}

ComplexityIndex::ComplexityIndex(std::vector<std::string> labels, Eigen::VectorXd values,
                                 IndexKind kind, int year)
    : labels_(std::move(labels)), values_(std::move(values)), kind_(kind), year_(year) {
  if (values_.size() != static_cast<Eigen::Index>(labels_.size())) {
    throw InvalidMatrix("index length does not match label count");
  }
  detail::check_unique(labels_, "index");
  const double n = static_cast<double>(values_.size());
  const double mean = values_.mean();
  const double sd = std::sqrt((values_.array() - mean).square().sum() / n);
  if (std::abs(mean) > 1e-9 || std::abs(sd - 1.0) > 1e-9) {
    throw InvalidMatrix(to_string(kind_) + " is not standardized (mean=" + std::to_string(mean) +
                        ", stdev=" + std::to_string(sd) + ")");
  }
}

IndexPanel::IndexPanel(std::vector<std::string> entities, std::vector<int> years,
                       Eigen::MatrixXd values, std::string kind)
    : entities_(std::move(entities)),
      years_(std::move(years)),
      values_(std::move(values)),
      kind_(std::move(kind)) {
  if (values_.rows() != static_cast<Eigen::Index>(entities_.size()) ||
      values_.cols() != static_cast<Eigen::Index>(years_.size())) {
    throw InvalidMatrix("panel dimensions do not match entity/year counts");
  }
  for (size_t i = 0; i + 1 < years_.size(); ++i) {
    if (years_[i] >= years_[i + 1]) {
      throw InvalidMatrix("panel years are not strictly increasing");
    }
  }
  for (const auto& e : entities_) {
    if (std::count(entities_.begin(), entities_.end(), e) > 1) {
      throw DuplicateEntity("panel entity '" + e + "' appears more than once");
    }
  }
}

namespace {

std::optional<Eigen::Index> find_pos(const std::vector<std::string>& v, const std::string& s) {
  auto it = std::find(v.begin(), v.end(), s);
  if (it == v.end()) return std::nullopt;
  return static_cast<Eigen::Index>(it - v.begin());
}

std::optional<Eigen::Index> find_pos(const std::vector<int>& v, int s) {
  auto it = std::find(v.begin(), v.end(), s);
  if (it == v.end()) return std::nullopt;
  return static_cast<Eigen::Index>(it - v.begin());
}

}  // namespace

bool IndexPanel::has(const std::string& entity, int year) const {
  return at(entity, year).has_value();
}

std::optional<double> IndexPanel::at(const std::string& entity, int year) const {
  auto i = find_pos(entities_, entity);
  auto j = find_pos(years_, year);
  if (!i || !j) return std::nullopt;
  double v = values_(*i, *j);
  if (std::isnan(v)) return std::nullopt;
  return v;
}

YearSeries IndexPanel::series(const std::string& entity) const {
  auto i = find_pos(entities_, entity);
  if (!i) {
    throw PreconditionError("panel has no entity '" + entity + "'");
  }
  YearSeries out;
  out.entity = entity;
  out.kind = kind_;
  for (size_t j = 0; j < years_.size(); ++j) {
    double v = values_(*i, static_cast<Eigen::Index>(j));
    if (!std::isnan(v)) {
      out.years.push_back(years_[j]);
      out.values.push_back(v);
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> IndexPanel::cross_section(int year) const {
  auto j = find_pos(years_, year);
  if (!j) {
    throw PreconditionError("panel has no year " + std::to_string(year));
  }
  std::vector<std::pair<std::string, double>> out;
  for (size_t i = 0; i < entities_.size(); ++i) {
    double v = values_(static_cast<Eigen::Index>(i), *j);
    if (!std::isnan(v)) out.emplace_back(entities_[i], v);
  }
  return out;
}

PruneResult prune(const BinaryIncidence& m) {
  // Zero rows contribute nothing to column sums and vice versa, so a single
  // simultaneous pass reaches the fixed point.
  Eigen::VectorXd row_sums = m.values().rowwise().sum();
  Eigen::VectorXd col_sums = m.values().colwise().sum();
  std::vector<Eigen::Index> keep_rows, keep_cols;
  std::vector<std::string> removed_rows, removed_cols;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (row_sums(i) > 0.0) {
      keep_rows.push_back(i);
    } else {
      removed_rows.push_back(m.row_labels()[static_cast<size_t>(i)]);
    }
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (col_sums(j) > 0.0) {
      keep_cols.push_back(j);
    } else {
      removed_cols.push_back(m.col_labels()[static_cast<size_t>(j)]);
    }
  }
  if (keep_rows.empty() || keep_cols.empty()) {
    throw EmptyMatrix("pruning removed every row or every column");
  }
  return PruneResult{m.select(keep_rows, keep_cols), std::move(removed_rows),
                     std::move(removed_cols)};
}

namespace {

template <typename M>
std::pair<M, M> align_impl(const M& a, Axis axis_a, const M& b, Axis axis_b) {
  const auto& labels_a = (axis_a == Axis::Rows) ? a.row_labels() : a.col_labels();
  const auto& labels_b = (axis_b == Axis::Rows) ? b.row_labels() : b.col_labels();
  auto shared = detail::sorted_intersection(labels_a, labels_b);

  auto all = [](Eigen::Index n) {
    std::vector<Eigen::Index> idx(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    return idx;
  };

  auto restrict_one = [&](const M& m, Axis axis) {
    auto idx = detail::label_indices((axis == Axis::Rows) ? m.row_labels() : m.col_labels(),
                                     shared);
    return (axis == Axis::Rows) ? m.select(idx, all(m.cols())) : m.select(all(m.rows()), idx);
  };

  return {restrict_one(a, axis_a), restrict_one(b, axis_b)};
}

}  // namespace

std::pair<ValuedMatrix, ValuedMatrix> align(const ValuedMatrix& a, Axis axis_a,
                                            const ValuedMatrix& b, Axis axis_b) {
  return align_impl(a, axis_a, b, axis_b);
}

std::pair<BinaryIncidence, BinaryIncidence> align(const BinaryIncidence& a, Axis axis_a,
                                                  const BinaryIncidence& b, Axis axis_b) {
  return align_impl(a, axis_a, b, axis_b);
}

}  // namespace triplex
