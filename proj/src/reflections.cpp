#include "triplex/reflections.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace triplex {

namespace {

constexpr double kUnitTol = 1e-9;   // eigenvalue counts as 1
constexpr double kZeroTol = 1e-9;   // eigenvalue counts as 0
constexpr double kImagTol = 1e-9;   // imaginary part counts as complex
constexpr double kTieTol = 1e-12;   // correlation counts as zero

std::string fmt_complex(const std::complex<double>& z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real();
  if (std::abs(z.imag()) > 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::string to_string(EigenRule rule) {
  return rule == EigenRule::SecondLargest ? "second-largest" : "largest-below-one";
}

namespace detail {

void require_pruned(const BinaryIncidence& m, const char* op) {
  if (!m.is_pruned()) {
    throw PreconditionError(std::string(op) +
                            " requires a pruned incidence matrix (no zero margins)");
  }
}

}  // namespace detail

std::pair<MarginVector, MarginVector> margins(const BinaryIncidence& m) {
  detail::require_pruned(m, "margins");
  MarginVector rows{m.row_labels(), m.values().rowwise().sum(),
                    margin_kind(m.row_kind(), m.col_kind())};
  MarginVector cols{m.col_labels(), m.values().colwise().sum(),
                    margin_kind(m.col_kind(), m.row_kind())};
  return {std::move(rows), std::move(cols)};
}

ReflectionState reflect(const BinaryIncidence& m, int n_steps) {
  detail::require_pruned(m, "reflect");
  if (n_steps < 0) throw PreconditionError("reflect: n_steps must be >= 0");
  auto [row_margin, col_margin] = margins(m);
  Eigen::VectorXd row_base = row_margin.values;
  Eigen::VectorXd col_base = col_margin.values;
  Eigen::VectorXd row_cur = row_base;
  Eigen::VectorXd col_cur = col_base;
  for (int n = 0; n < n_steps; ++n) {
    col_cur = (m.values().transpose() * row_cur).cwiseQuotient(col_base);
    row_cur = (m.values() * col_cur).cwiseQuotient(row_base);
  }
  return ReflectionState{n_steps,
                         MarginVector{m.row_labels(), std::move(row_cur), row_margin.kind},
                         MarginVector{m.col_labels(), std::move(col_cur), col_margin.kind}};
}

LabeledSquare w_bipartite(const BinaryIncidence& m) {
  detail::require_pruned(m, "w_bipartite");
  Eigen::VectorXd row_margin = m.values().rowwise().sum();
  Eigen::VectorXd col_margin = m.values().colwise().sum();
  Eigen::MatrixXd w = row_margin.cwiseInverse().asDiagonal() * m.values() *
                      col_margin.cwiseInverse().asDiagonal() * m.values().transpose();
  return LabeledSquare{m.row_labels(), std::move(w), m.row_kind()};
}

SpectralResult spectral_select(const LabeledSquare& w, EigenRule rule) {
  const Eigen::Index n = w.values.rows();
  if (n == 0 || w.values.cols() != n) {
    throw PreconditionError("spectral_select requires a nonempty square matrix");
  }
  double row_sum_err = (w.values.rowwise().sum().array() - 1.0).abs().maxCoeff();
  if (row_sum_err > 1e-9) {
    throw PreconditionError("spectral_select requires a row-stochastic matrix (row sum off by " +
                            std::to_string(row_sum_err) + ")");
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(w.values, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw DegenerateSpectrum("eigen-decomposition failed to converge");
  }
  const Eigen::VectorXcd vals = solver.eigenvalues();
  const Eigen::MatrixXcd vecs = solver.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    double ma = std::abs(vals(a)), mb = std::abs(vals(b));
    if (ma != mb) return ma > mb;
    if (vals(a).real() != vals(b).real()) return vals(a).real() > vals(b).real();
    if (vals(a).imag() != vals(b).imag()) return vals(a).imag() > vals(b).imag();
    return a < b;
  });

  SpectralResult result;
  result.rule = rule;
  result.eigenvalues.reserve(static_cast<size_t>(n));
  for (auto i : order) result.eigenvalues.push_back(vals(i));

  // One unit eigenvalue belongs to the constant eigenvector and carries no
  // information; find and exclude exactly one.
  size_t trivial_pos = static_cast<size_t>(n);
  for (size_t k = 0; k < order.size(); ++k) {
    if (std::abs(vals(order[k]) - 1.0) <= kUnitTol) {
      trivial_pos = k;
      break;
    }
  }
  if (trivial_pos == static_cast<size_t>(n)) {
    throw PreconditionError("input has no unit eigenvalue; not row-stochastic?");
  }

  std::vector<size_t> candidates;
  for (size_t k = 0; k < order.size(); ++k) {
    if (k == trivial_pos) continue;
    if (rule == EigenRule::LargestBelowOne && std::abs(vals(order[k])) >= 1.0 - kUnitTol) continue;
    candidates.push_back(k);
  }
  if (candidates.empty()) {
    throw DegenerateSpectrum("no admissible eigenvalue under rule " + to_string(rule));
  }

  std::optional<size_t> chosen;
  bool saw_complex = false;
  for (size_t c : candidates) {
    const std::complex<double> lam = vals(order[c]);
    if (std::abs(lam.imag()) > kImagTol) {
      saw_complex = true;
      result.warnings.push_back("skipped complex eigenvalue " + fmt_complex(lam));
      continue;
    }
    chosen = c;
    break;
  }
  if (!chosen) {
    if (saw_complex) {
      throw NoRealEigenvalue("all nontrivial eigenvalues are complex");
    }
    throw DegenerateSpectrum("no admissible real eigenvalue");
  }

  const std::complex<double> selected = vals(order[*chosen]);
  if (std::abs(selected) < kZeroTol) {
    throw DegenerateSpectrum("selected eigenvalue " + fmt_complex(selected) +
                             " is numerically zero; the index is undefined");
  }

  // Extract a real eigenvector: rotate out any global phase, then drop the
  // residual imaginary part.
  auto realize = [&](Eigen::Index col) {
    Eigen::VectorXcd v = vecs.col(col);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    std::complex<double> phase = v(imax) / std::abs(v(imax));
    v /= phase;
    Eigen::VectorXd rv = v.real();
    return rv;
  };

  Eigen::VectorXd vec = realize(order[*chosen]);

  if (std::abs(selected - 1.0) <= kUnitTol) {
    // Degenerate unit cluster (disconnected components): the eigenspace
    // contains the constant vector; remove it so the component structure
    // is what remains. Fall back to sibling unit eigenvectors if this one
    // was itself (numerically) constant.
    std::vector<size_t> unit_members{*chosen};
    for (size_t c : candidates) {
      if (c != *chosen && std::abs(vals(order[c]) - 1.0) <= kUnitTol &&
          std::abs(vals(order[c]).imag()) <= kImagTol) {
        unit_members.push_back(c);
      }
    }
    bool ok = false;
    for (size_t c : unit_members) {
      Eigen::VectorXd cand = realize(order[c]);
      cand.array() -= cand.mean();
      if (cand.norm() > 1e-9) {
        vec = cand;
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw DegenerateSpectrum("unit eigenspace holds no non-constant direction");
    }
  }

  double norm = vec.norm();
  if (norm < 1e-12) {
    throw DegenerateSpectrum("selected eigenvector is numerically zero");
  }
  vec /= norm;
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    if (std::abs(vec(i)) > kTieTol) {
      if (vec(i) < 0.0) vec = -vec;
      break;
    }
  }

  result.selected_eigenvalue = selected;
  result.eigenvector = std::move(vec);
  return result;
}

Eigen::VectorXd standardize(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n < 2) {
    throw DegenerateIndex("cannot standardize fewer than two entries");
  }
  const double mean = v.mean();
  const double sd = std::sqrt((v.array() - mean).square().sum() / static_cast<double>(n));
  if (sd <= 1e-12) {
    throw DegenerateIndex("zero variance; index undefined");
  }
  return (v.array() - mean) / sd;
}

ComplexityIndex standardize(const std::vector<std::string>& labels, const Eigen::VectorXd& v,
                            IndexKind kind, int year) {
  return ComplexityIndex(labels, standardize(v), kind, year);
}

Eigen::VectorXd sign_fix(const Eigen::VectorXd& v, const Eigen::VectorXd& anchor) {
  if (v.size() != anchor.size()) {
    throw LengthMismatch("sign anchor length does not match vector length");
  }
  const double n = static_cast<double>(v.size());
  Eigen::ArrayXd vc = v.array() - v.mean();
  Eigen::ArrayXd ac = anchor.array() - anchor.mean();
  double cov = (vc * ac).sum() / n;
  double denom = std::sqrt(vc.square().sum() / n) * std::sqrt(ac.square().sum() / n);
  double corr = denom > 0.0 ? cov / denom : 0.0;
  if (corr < -kTieTol) return -v;
  if (corr > kTieTol) return v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kTieTol) {
      return v(i) < 0.0 ? Eigen::VectorXd(-v) : v;
    }
  }
  return v;
}

namespace {

IndexKind index_kind_for(AxisKind indexed, AxisKind other) {
  using A = AxisKind;
  if (indexed == A::Country && other == A::Product) return IndexKind::ECI;
  if (indexed == A::Product && other == A::Country) return IndexKind::PCI;
  if (indexed == A::Country && other == A::Technology) return IndexKind::PatCI;
  if (indexed == A::Technology && other == A::Country) return IndexKind::TCI;
  if (indexed == A::Product && other == A::Technology) return IndexKind::PTCI;
  if (indexed == A::Technology && other == A::Product) return IndexKind::TPCI;
  throw PreconditionError("no complexity index is defined for axis pair (" + to_string(indexed) +
                          ", " + to_string(other) + ")");
}

}  // namespace

IndexComputation complexity_index_detail(const BinaryIncidence& m, Axis side, EigenRule rule,
                                         int year) {
  const BinaryIncidence oriented = (side == Axis::Rows) ? m : m.transposed();
  detail::require_pruned(oriented, "complexity_index");
  LabeledSquare w = w_bipartite(oriented);
  SpectralResult spectral = spectral_select(w, rule);
  Eigen::VectorXd diversity = oriented.values().rowwise().sum();
  Eigen::VectorXd vec = sign_fix(spectral.eigenvector, diversity);
  IndexKind kind = index_kind_for(oriented.row_kind(), oriented.col_kind());
  ComplexityIndex index = standardize(oriented.row_labels(), vec, kind, year);
  return IndexComputation{std::move(spectral), std::move(vec), std::move(index)};
}

ComplexityIndex complexity_index(const BinaryIncidence& m, Axis side, EigenRule rule, int year) {
  return complexity_index_detail(m, side, rule, year).index;
}

LabeledVector reflect_limit(const BinaryIncidence& m, double tol, int max_iter) {
  detail::require_pruned(m, "reflect_limit");
  LabeledSquare w = w_bipartite(m);
  const Eigen::Index n = w.values.rows();

  // The diversity margin is the unit left eigenvector of W, so removing the
  // projection onto the constant right eigenvector along it deflates exactly
  // the trivial mode and leaves the informative spectrum untouched.
  Eigen::VectorXd pi = m.values().rowwise().sum();
  const double pi_total = pi.sum();
  auto deflate = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return x.array() - pi.dot(x) / pi_total;
  };

  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = static_cast<double>(i + 1);
  x = deflate(x);
  if (x.norm() < 1e-12) {
    throw DegenerateSpectrum("no nontrivial direction exists");
  }
  x.normalize();

  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::VectorXd y = deflate(w.values * x);
    double norm = y.norm();
    if (norm < 1e-12) {
      throw DegenerateSpectrum("iterate collapsed to the constant direction");
    }
    y /= norm;
    residual = std::min((y - x).norm(), (y + x).norm());
    x = std::move(y);
    if (residual < tol) {
      return LabeledVector{m.row_labels(), std::move(x)};
    }
  }
  std::ostringstream os;
  os << "power iteration did not reach tol=" << tol << " after " << max_iter
     << " steps (final residual " << residual << ")";
  throw NoConvergence(os.str());
}

}  // namespace triplex
