#include "triplex/triple_helix.hpp"

#include <algorithm>
#include <set>

namespace triplex {

namespace {

std::vector<Eigen::Index> all_indices(Eigen::Index n) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  return idx;
}

BinaryIncidence restrict_axis(const BinaryIncidence& m, Axis axis,
                              const std::vector<std::string>& labels) {
  auto idx = detail::label_indices((axis == Axis::Rows) ? m.row_labels() : m.col_labels(), labels);
  return (axis == Axis::Rows) ? m.select(idx, all_indices(m.cols()))
                              : m.select(all_indices(m.rows()), idx);
}

/// Labels whose margin is positive in both of the given matrix sides.
std::vector<std::string> jointly_covered(const std::vector<std::string>& labels,
                                         const Eigen::VectorXd& margin_a,
                                         const Eigen::VectorXd& margin_b) {
  std::vector<std::string> out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (margin_a(static_cast<Eigen::Index>(i)) > 0.0 &&
        margin_b(static_cast<Eigen::Index>(i)) > 0.0) {
      out.push_back(labels[i]);
    }
  }
  return out;
}

std::vector<std::string> missing_from(const std::set<std::string>& universe,
                                      const std::vector<std::string>& survivors) {
  std::set<std::string> kept(survivors.begin(), survivors.end());
  std::vector<std::string> out;
  for (const auto& l : universe) {
    if (!kept.count(l)) out.push_back(l);
  }
  return out;
}

void validate_system(const TripartiteSystem& s) {
  if (s.cp.row_labels() != s.ct.row_labels()) {
    throw PreconditionError("tripartite system: country labels of the two country-side matrices differ");
  }
  if (s.cp.col_labels() != s.pt.row_labels()) {
    throw PreconditionError("tripartite system: product labels differ between matrices");
  }
  if (s.ct.col_labels() != s.pt.col_labels()) {
    throw PreconditionError("tripartite system: technology labels differ between matrices");
  }
  for (const BinaryIncidence* m : {&s.cp, &s.ct, &s.pt}) {
    if (!m->is_pruned()) {
      throw PreconditionError("tripartite system has a zero margin; build_system first");
    }
  }
}

}  // namespace

BuildResult build_system(const BinaryIncidence& m_cp, const BinaryIncidence& m_ct,
                         const BinaryIncidence& m_pt) {
  std::set<std::string> all_countries(m_cp.row_labels().begin(), m_cp.row_labels().end());
  all_countries.insert(m_ct.row_labels().begin(), m_ct.row_labels().end());
  std::set<std::string> all_products(m_cp.col_labels().begin(), m_cp.col_labels().end());
  all_products.insert(m_pt.row_labels().begin(), m_pt.row_labels().end());
  std::set<std::string> all_technologies(m_ct.col_labels().begin(), m_ct.col_labels().end());
  all_technologies.insert(m_pt.col_labels().begin(), m_pt.col_labels().end());

  auto countries = detail::sorted_intersection(m_cp.row_labels(), m_ct.row_labels());
  auto products = detail::sorted_intersection(m_cp.col_labels(), m_pt.row_labels());
  auto technologies = detail::sorted_intersection(m_ct.col_labels(), m_pt.col_labels());

  BinaryIncidence cp = restrict_axis(restrict_axis(m_cp, Axis::Rows, countries), Axis::Cols, products);
  BinaryIncidence ct =
      restrict_axis(restrict_axis(m_ct, Axis::Rows, countries), Axis::Cols, technologies);
  BinaryIncidence pt =
      restrict_axis(restrict_axis(m_pt, Axis::Rows, products), Axis::Cols, technologies);

  // Joint prune: a label survives only while its margin is positive in both
  // matrices that share the axis. Shrinking one axis can zero out margins on
  // another, so iterate to the fixed point.
  for (;;) {
    auto next_countries =
        jointly_covered(countries, cp.values().rowwise().sum(), ct.values().rowwise().sum());
    auto next_products =
        jointly_covered(products, cp.values().colwise().sum(), pt.values().rowwise().sum());
    auto next_technologies =
        jointly_covered(technologies, ct.values().colwise().sum(), pt.values().colwise().sum());
    if (next_countries.empty() || next_products.empty() || next_technologies.empty()) {
      throw EmptyMatrix("joint pruning removed an entire axis of the tripartite system");
    }
    bool stable = next_countries == countries && next_products == products &&
                  next_technologies == technologies;
    if (stable) break;
    countries = std::move(next_countries);
    products = std::move(next_products);
    technologies = std::move(next_technologies);
    cp = restrict_axis(restrict_axis(cp, Axis::Rows, countries), Axis::Cols, products);
    ct = restrict_axis(restrict_axis(ct, Axis::Rows, countries), Axis::Cols, technologies);
    pt = restrict_axis(restrict_axis(pt, Axis::Rows, products), Axis::Cols, technologies);
  }

  BuildResult result{TripartiteSystem{std::move(cp), std::move(ct), std::move(pt)},
                     missing_from(all_countries, countries), missing_from(all_products, products),
                     missing_from(all_technologies, technologies)};
  return result;
}

LabeledSquare w_clockwise(const TripartiteSystem& s) {
  validate_system(s);
  Eigen::VectorXd rho_c = s.ct.values().rowwise().sum();
  Eigen::VectorXd eta_t = s.pt.values().colwise().sum();
  Eigen::VectorXd k_p = s.cp.values().colwise().sum();
  Eigen::MatrixXd w = rho_c.cwiseInverse().asDiagonal() * s.ct.values() *
                      eta_t.cwiseInverse().asDiagonal() * s.pt.values().transpose() *
                      k_p.cwiseInverse().asDiagonal() * s.cp.values().transpose();
  return LabeledSquare{s.countries(), std::move(w), AxisKind::Country};
}

LabeledSquare w_counterclockwise(const TripartiteSystem& s) {
  validate_system(s);
  Eigen::VectorXd k_c = s.cp.values().rowwise().sum();
  Eigen::VectorXd eta_p = s.pt.values().rowwise().sum();
  Eigen::VectorXd rho_t = s.ct.values().colwise().sum();
  Eigen::MatrixXd v = k_c.cwiseInverse().asDiagonal() * s.cp.values() *
                      eta_p.cwiseInverse().asDiagonal() * s.pt.values() *
                      rho_t.cwiseInverse().asDiagonal() * s.ct.values().transpose();
  return LabeledSquare{s.countries(), std::move(v), AxisKind::Country};
}

TripartiteSystem mirror(const TripartiteSystem& s) {
  return TripartiteSystem{s.ct, s.cp, s.pt.transposed()};
}

ThciComputation thci_detail(const TripartiteSystem& s, EigenRule rule, int year) {
  SpectralResult clockwise = spectral_select(w_clockwise(s), rule);
  SpectralResult counterclockwise = spectral_select(w_counterclockwise(s), rule);

  // Both rotations are anchored to the same margin so arbitrary eigenvector
  // signs cannot cancel in the sum.
  Eigen::VectorXd anchor = s.cp.values().rowwise().sum();
  Eigen::VectorXd k_plus = sign_fix(clockwise.eigenvector, anchor);
  Eigen::VectorXd k_minus = sign_fix(counterclockwise.eigenvector, anchor);
  Eigen::VectorXd combined = k_plus + k_minus;

  ComplexityIndex index = standardize(s.countries(), combined, IndexKind::THCI, year);
  return ThciComputation{std::move(clockwise), std::move(counterclockwise), std::move(combined),
                         std::move(index)};
}

ComplexityIndex thci(const TripartiteSystem& s, EigenRule rule, int year) {
  return thci_detail(s, rule, year).index;
}

}  // namespace triplex
