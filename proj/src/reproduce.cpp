#include "triplex/reproduce.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "csv.hpp"
#include "triplex/ingest.hpp"
#include "triplex/stats.hpp"

namespace triplex {

namespace {

ReproCheck make_check(std::string name, double computed, double target, double tolerance) {
  bool pass = std::isfinite(computed) && std::abs(computed - target) <= tolerance;
  return ReproCheck{std::move(name), computed, target, tolerance, pass};
}

IndexPanel load_fixture(const std::filesystem::path& dir, const char* file, const char* kind) {
  auto path = dir / file;
  if (!std::filesystem::exists(path)) {
    throw ParseError("missing fixture '" + path.string() + "'");
  }
  return load_panel(path, kind);
}

}  // namespace

std::vector<ReproCheck> run_reproduction(const std::filesystem::path& fixtures_dir) {
  IndexPanel eci = load_fixture(fixtures_dir, "eci_panel.csv", "eci");
  IndexPanel patci = load_fixture(fixtures_dir, "patci_panel.csv", "patci");
  IndexPanel thci = load_fixture(fixtures_dir, "thci_panel.csv", "thci");

  std::vector<ReproCheck> checks;

  // Pearson cross-section, 2014.
  auto grid = cross_section_correlate({eci, patci, thci}, 2014, CorrMethod::Pearson);
  checks.push_back(make_check("pearson 2014 eci-patci", grid[0][1].coefficient, 0.525, 0.005));
  checks.push_back(make_check("pearson 2014 eci-thci", grid[0][2].coefficient, 0.774, 0.005));
  checks.push_back(make_check("pearson 2014 thci-patci", grid[2][1].coefficient, 0.375, 0.005));

  // Lagged Spearman for the United States; positive lag means the second
  // series is read `lag` years later (the first series leads).
  const std::string usa = "United States";
  auto thci_usa = thci.series(usa);
  auto lag2 = lagged_correlate(thci_usa, eci.series(usa), CorrMethod::Spearman, 2);
  checks.push_back(make_check("spearman usa thci-eci lag+2", lag2.coefficient, 0.582, 0.02));
  auto lag0 = lagged_correlate(thci_usa, eci.series(usa), CorrMethod::Spearman, 0);
  checks.push_back(make_check("spearman usa thci-eci lag 0", lag0.coefficient, -0.011, 0.02));
  auto lag3 = lagged_correlate(thci_usa, patci.series(usa), CorrMethod::Spearman, 3);
  checks.push_back(make_check("spearman usa thci-patci lag+3", lag3.coefficient, 0.298, 0.02));

  // The yearly series and the single-year cross-section are two entry points
  // into the same computation; their 2014 values must agree exactly.
  auto series_ep = correlation_series(eci, patci, CorrMethod::Pearson);
  double endpoint = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : series_ep.reports) {
    if (r.year && *r.year == 2014) endpoint = r.coefficient;
  }
  checks.push_back(make_check("series endpoint == cross-section 2014",
                              endpoint - grid[0][1].coefficient, 0.0, 1e-12));

  // Full yearly correlation series against the recorded expected values;
  // every fixture cell enters its year's coefficients, so any perturbation
  // shows up here.
  auto expected_path = fixtures_dir / "correlation_series_expected.csv";
  if (!std::filesystem::exists(expected_path)) {
    throw ParseError("missing fixture '" + expected_path.string() + "'");
  }
  auto expected_rows = csv::read_file(expected_path);
  std::map<std::pair<std::string, int>, double> expected;
  for (size_t r = 1; r < expected_rows.size(); ++r) {
    const auto& f = expected_rows[r].fields;
    if (f.size() != 4) {
      throw ParseError(expected_path.string() + ":" + std::to_string(expected_rows[r].line_no) +
                       ": expected 4 fields");
    }
    expected[{f[0], std::stoi(f[1])}] = std::stod(f[3]);
  }

  const std::vector<std::tuple<std::string, const IndexPanel*, const IndexPanel*>> pairs = {
      {"eci-patci", &eci, &patci},
      {"eci-thci", &eci, &thci},
      {"thci-patci", &thci, &patci},
  };
  for (const auto& [pair_name, a, b] : pairs) {
    auto series = correlation_series(*a, *b, CorrMethod::Pearson);
    double max_dev = 0.0;
    size_t matched = 0;
    for (const auto& r : series.reports) {
      auto it = expected.find({pair_name, *r.year});
      if (it == expected.end()) continue;
      ++matched;
      max_dev = std::max(max_dev, std::abs(r.coefficient - it->second));
    }
    if (matched != 15) {
      max_dev = std::numeric_limits<double>::infinity();  // series incomplete
    }
    checks.push_back(make_check("series " + pair_name + " vs expected (max dev)", max_dev, 0.0,
                                1e-9));
  }

  return checks;
}

}  // namespace triplex
