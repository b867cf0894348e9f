#pragma once

#include "triplex/reflections.hpp"

namespace triplex {

/// Three pairwise-aligned incidence matrices over shared country, product,
/// and technology label sets. All six margins are strictly positive.
struct TripartiteSystem {
  BinaryIncidence cp;  // country x product
  BinaryIncidence ct;  // country x technology
  BinaryIncidence pt;  // product x technology

  const std::vector<std::string>& countries() const { return cp.row_labels(); }
  const std::vector<std::string>& products() const { return cp.col_labels(); }
  const std::vector<std::string>& technologies() const { return ct.col_labels(); }
};

struct BuildResult {
  TripartiteSystem system;
  std::vector<std::string> removed_countries;
  std::vector<std::string> removed_products;
  std::vector<std::string> removed_technologies;
};

/// Aligns the three matrices on their shared axes and jointly prunes until
/// every margin is positive; removing a label from one matrix re-restricts
/// the others (fixed-point loop). Reports every label from the inputs that
/// did not survive.
BuildResult build_system(const BinaryIncidence& m_cp, const BinaryIncidence& m_ct,
                         const BinaryIncidence& m_pt);

/// Country coupling through the country-technology-product-country cycle:
/// W_{cc'} = sum_{t,p} M_ct M_pt M_c'p / (rho_c eta_t k_p). Row-stochastic.
LabeledSquare w_clockwise(const TripartiteSystem& s);

/// Country coupling through the country-product-technology-country cycle:
/// V_{cc'} = sum_{t,p} M_cp M_pt M_c't / (k_c eta_p rho_t). Row-stochastic.
LabeledSquare w_counterclockwise(const TripartiteSystem& s);

/// Swaps the product and technology roles (cp <-> ct, pt transposed); the
/// counter-clockwise coupling of a system equals the clockwise coupling of
/// its mirror.
TripartiteSystem mirror(const TripartiteSystem& s);

struct ThciComputation {
  SpectralResult clockwise;
  SpectralResult counterclockwise;
  Eigen::VectorXd combined;  // k(+) + k(-) before standardization
  ComplexityIndex index;
};

/// Triple-helix complexity: the eigenvectors of both rotations, each unit
/// norm and sign-fixed against the country-product diversity margin, are
/// summed and the sum standardized.
ThciComputation thci_detail(const TripartiteSystem& s,
                            EigenRule rule = EigenRule::LargestBelowOne, int year = 0);

ComplexityIndex thci(const TripartiteSystem& s, EigenRule rule = EigenRule::LargestBelowOne,
                     int year = 0);

}  // namespace triplex
