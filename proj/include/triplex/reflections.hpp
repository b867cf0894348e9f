#pragma once

#include <complex>
#include <vector>

#include "triplex/labeled.hpp"

namespace triplex {

/// State of the reflections iteration: both side vectors at step n.
struct ReflectionState {
  int iteration;
  MarginVector row_side;
  MarginVector col_side;
};

enum class EigenRule { SecondLargest, LargestBelowOne };

std::string to_string(EigenRule rule);

/// Full spectrum of a row-stochastic coupling matrix plus the eigenpair
/// picked by the selection rule.
struct SpectralResult {
  std::vector<std::complex<double>> eigenvalues;  // descending modulus
  std::complex<double> selected_eigenvalue;
  Eigen::VectorXd eigenvector;  // real, unit norm, deterministic sign
  EigenRule rule;
  std::vector<std::string> warnings;
};

/// Row sums (diversity) and column sums (ubiquity) of a pruned incidence
/// matrix; both strictly positive.
std::pair<MarginVector, MarginVector> margins(const BinaryIncidence& m);

/// Runs the reflections recurrence for `n_steps` full cycles starting from
/// the margins. One cycle recomputes the column side from the current row
/// side, then the row side from the freshly updated column side.
ReflectionState reflect(const BinaryIncidence& m, int n_steps);

/// Row-to-row coupling matrix: W = D_r^{-1} M D_c^{-1} M^T, where D_r and
/// D_c hold the margins. Row-stochastic by construction.
LabeledSquare w_bipartite(const BinaryIncidence& m);

/// Eigen-decomposition of a row-stochastic matrix with the trivial unit
/// eigenvalue excluded. `SecondLargest` takes the next eigenvalue in modulus
/// order; `LargestBelowOne` takes the largest-modulus eigenvalue strictly
/// below one. Complex eigenvalues are skipped with a warning. When the
/// selected eigenvalue itself lies in a degenerate unit cluster, the
/// constant direction is removed from its eigenvector so the informative
/// component is returned.
SpectralResult spectral_select(const LabeledSquare& w, EigenRule rule);

/// (v - mean(v)) / stdev(v) with the population (divide-by-N) deviation.
Eigen::VectorXd standardize(const Eigen::VectorXd& v);

ComplexityIndex standardize(const std::vector<std::string>& labels, const Eigen::VectorXd& v,
                            IndexKind kind, int year = 0);

/// Orients `v` so that its correlation with `anchor` is nonnegative; when
/// the correlation is zero within 1e-12 the first nonzero entry is made
/// nonnegative.
Eigen::VectorXd sign_fix(const Eigen::VectorXd& v, const Eigen::VectorXd& anchor);

struct IndexComputation {
  SpectralResult spectral;
  Eigen::VectorXd eigenvector;  // sign-fixed against the diversity margin
  ComplexityIndex index;
};

/// Full pipeline for one side of an incidence matrix: coupling matrix,
/// eigenvalue selection, sign fix against the side's diversity margin,
/// standardization. `side` picks which axis is indexed.
IndexComputation complexity_index_detail(const BinaryIncidence& m, Axis side,
                                         EigenRule rule = EigenRule::SecondLargest, int year = 0);

ComplexityIndex complexity_index(const BinaryIncidence& m, Axis side,
                                 EigenRule rule = EigenRule::SecondLargest, int year = 0);

/// Brute-force oracle: power iteration on the coupling matrix with the
/// trivial component deflated after every step (the diversity margin is the
/// unit left eigenvector, so deflation removes exactly the constant mode).
/// Returns the unit-norm limit over the row labels.
struct LabeledVector {
  std::vector<std::string> labels;
  Eigen::VectorXd values;
};

LabeledVector reflect_limit(const BinaryIncidence& m, double tol, int max_iter);

namespace detail {

/// Throws unless every row and column margin is strictly positive.
void require_pruned(const BinaryIncidence& m, const char* op);

}  // namespace detail

}  // namespace triplex
