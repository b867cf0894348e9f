#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "triplex/labeled.hpp"

namespace triplex {

enum class CorrMethod { Pearson, Spearman };

std::string to_string(CorrMethod method);

struct CorrelationReport {
  CorrMethod method;
  int lag = 0;
  int n_pairs = 0;
  double coefficient = 0.0;
  std::string scope;
  std::optional<double> p_value;
  std::optional<int> year;
};

/// Sample Pearson product-moment coefficient.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson coefficient of the rank vectors; ties receive midranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// Average (mid) ranks, 1-based.
std::vector<double> midranks(std::span<const double> x);

/// Correlates a(t) with b(t + lag) over the maximal overlapping year window.
/// Positive lag means b is taken `lag` years after a (a leads).
CorrelationReport lagged_correlate(const YearSeries& a, const YearSeries& b, CorrMethod method,
                                   int lag);

/// Pairwise coefficients across panels over the entities every panel covers
/// in `year`; the diagonal is exactly 1.
std::vector<std::vector<CorrelationReport>> cross_section_correlate(
    const std::vector<IndexPanel>& panels, int year, CorrMethod method);

struct SeriesResult {
  std::vector<CorrelationReport> reports;              // one per usable year
  std::vector<std::pair<int, std::string>> skipped;    // year -> reason
};

/// One cross-sectional coefficient per common year, over the entities both
/// panels cover in that year. Years with insufficient overlap are recorded
/// in `skipped` rather than failing the whole series.
SeriesResult correlation_series(const IndexPanel& a, const IndexPanel& b, CorrMethod method);

/// Spearman rank correlation between the series and its (monotone) time
/// indices, with a two-sided p-value: exact permutation for n <= 10, the
/// t-approximation otherwise.
CorrelationReport trend_test(std::span<const double> series);

}  // namespace triplex
