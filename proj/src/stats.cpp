#include "triplex/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

namespace triplex {

std::string to_string(CorrMethod method) {
  return method == CorrMethod::Pearson ? "pearson" : "spearman";
}

namespace {

void check_lengths(size_t nx, size_t ny) {
  if (nx != ny) {
    throw LengthMismatch("vectors have different lengths (" + std::to_string(nx) + " vs " +
                         std::to_string(ny) + ")");
  }
  if (nx < 3) {
    throw PreconditionError("correlation requires at least 3 observations");
  }
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
}

double pearson_unchecked(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double apply_method(CorrMethod method, std::span<const double> x, std::span<const double> y) {
  return method == CorrMethod::Pearson ? pearson(x, y) : spearman(x, y);
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size());
  if (is_constant(x) || is_constant(y)) {
    throw ZeroVariance("correlation is undefined for a constant vector");
  }
  double r = pearson_unchecked(x, y);
  if (!std::isfinite(r)) {
    throw ZeroVariance("correlation is numerically undefined (zero variance)");
  }
  return r;
}

std::vector<double> midranks(std::span<const double> x) {
  const size_t n = x.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size());
  auto rx = midranks(x);
  auto ry = midranks(y);
  return pearson(rx, ry);
}

CorrelationReport lagged_correlate(const YearSeries& a, const YearSeries& b, CorrMethod method,
                                   int lag) {
  std::unordered_map<int, double> b_by_year;
  for (size_t i = 0; i < b.years.size(); ++i) b_by_year.emplace(b.years[i], b.values[i]);

  std::vector<double> xs, ys;
  for (size_t i = 0; i < a.years.size(); ++i) {
    auto it = b_by_year.find(a.years[i] + lag);
    if (it != b_by_year.end()) {
      xs.push_back(a.values[i]);
      ys.push_back(it->second);
    }
  }
  if (xs.size() < 3) {
    throw InsufficientOverlap("only " + std::to_string(xs.size()) +
                              " overlapping year pairs at lag " + std::to_string(lag));
  }
  CorrelationReport report;
  report.method = method;
  report.lag = lag;
  report.n_pairs = static_cast<int>(xs.size());
  report.coefficient = apply_method(method, xs, ys);
  report.scope = a.kind + "(" + a.entity + ") vs " + b.kind + "(" + b.entity + ")";
  return report;
}

std::vector<std::vector<CorrelationReport>> cross_section_correlate(
    const std::vector<IndexPanel>& panels, int year, CorrMethod method) {
  if (panels.size() < 2) {
    throw PreconditionError("cross-section correlation needs at least two panels");
  }
  // Entities every panel covers in this year.
  std::vector<std::string> common;
  for (size_t k = 0; k < panels.size(); ++k) {
    std::vector<std::string> present;
    for (const auto& [entity, value] : panels[k].cross_section(year)) {
      (void)value;
      present.push_back(entity);
    }
    std::sort(present.begin(), present.end());
    if (k == 0) {
      common = std::move(present);
    } else {
      std::vector<std::string> merged;
      std::set_intersection(common.begin(), common.end(), present.begin(), present.end(),
                            std::back_inserter(merged));
      common = std::move(merged);
    }
  }
  if (common.size() < 3) {
    throw InsufficientOverlap("only " + std::to_string(common.size()) +
                              " entities shared by all panels in " + std::to_string(year));
  }

  std::vector<std::vector<double>> columns(panels.size());
  for (size_t k = 0; k < panels.size(); ++k) {
    for (const auto& e : common) {
      columns[k].push_back(*panels[k].at(e, year));
    }
  }

  std::vector<std::vector<CorrelationReport>> grid(panels.size(),
                                                   std::vector<CorrelationReport>(panels.size()));
  for (size_t i = 0; i < panels.size(); ++i) {
    for (size_t j = 0; j < panels.size(); ++j) {
      CorrelationReport& r = grid[i][j];
      r.method = method;
      r.n_pairs = static_cast<int>(common.size());
      r.year = year;
      r.scope = panels[i].kind() + " vs " + panels[j].kind() + " over " +
                std::to_string(common.size()) + " entities";
      r.coefficient = (i == j) ? 1.0 : apply_method(method, columns[i], columns[j]);
    }
  }
  return grid;
}

SeriesResult correlation_series(const IndexPanel& a, const IndexPanel& b, CorrMethod method) {
  std::set<int> years_a(a.years().begin(), a.years().end());
  SeriesResult out;
  for (int year : b.years()) {
    if (!years_a.count(year)) continue;
    std::vector<double> xs, ys;
    for (const auto& [entity, value] : a.cross_section(year)) {
      if (auto other = b.at(entity, year)) {
        xs.push_back(value);
        ys.push_back(*other);
      }
    }
    if (xs.size() < 3) {
      out.skipped.emplace_back(year, "only " + std::to_string(xs.size()) + " common entities");
      continue;
    }
    CorrelationReport report;
    report.method = method;
    report.n_pairs = static_cast<int>(xs.size());
    report.year = year;
    report.scope = a.kind() + " vs " + b.kind();
    try {
      report.coefficient = apply_method(method, xs, ys);
    } catch (const ZeroVariance&) {
      out.skipped.emplace_back(year, "zero variance");
      continue;
    }
    out.reports.push_back(std::move(report));
  }
  return out;
}

namespace {

/// Exact two-sided permutation p-value of the observed Spearman rho against
/// the uniform distribution over arrangements of the observed ranks.
double exact_permutation_p(const std::vector<double>& series_ranks, double rho_observed) {
  const size_t n = series_ranks.size();
  std::vector<double> time_ranks(n);
  std::iota(time_ranks.begin(), time_ranks.end(), 1.0);

  std::vector<double> perm = series_ranks;
  std::sort(perm.begin(), perm.end());
  long long total = 0, at_least = 0;
  do {
    ++total;
    if (std::abs(pearson_unchecked(perm, time_ranks)) >= std::abs(rho_observed) - 1e-12) {
      ++at_least;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(at_least) / static_cast<double>(total);
}

double t_approximation_p(double rho, size_t n) {
  double df = static_cast<double>(n - 2);
  double denom = 1.0 - rho * rho;
  if (denom <= 0.0) return 0.0;
  double t = rho * std::sqrt(df / denom);
  boost::math::students_t_distribution<double> dist(df);
  return 2.0 * boost::math::cdf(dist, -std::abs(t));
}

}  // namespace

CorrelationReport trend_test(std::span<const double> series) {
  const size_t n = series.size();
  if (n < 3) {
    throw PreconditionError("trend test requires at least 3 observations");
  }
  if (is_constant(series)) {
    throw ZeroVariance("trend of a constant series is undefined");
  }
  std::vector<double> time(n);
  std::iota(time.begin(), time.end(), 1.0);
  double rho = spearman(series, time);

  CorrelationReport report;
  report.method = CorrMethod::Spearman;
  report.n_pairs = static_cast<int>(n);
  report.coefficient = rho;
  report.scope = "series vs time";
  report.p_value = (n <= 10) ? exact_permutation_p(midranks(series), rho)
                             : t_approximation_p(rho, n);
  return report;
}

}  // namespace triplex
