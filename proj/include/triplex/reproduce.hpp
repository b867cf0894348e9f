#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace triplex {

struct ReproCheck {
  std::string name;
  double computed = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Runs every check of the bundled-reference battery: the 2014 Pearson
/// cross-section trio, the lagged Spearman spot values for the United
/// States, agreement of the two correlation-series entry points, and the
/// full yearly correlation series against the recorded expected values.
/// Throws DataError when a fixture file is missing or malformed.
std::vector<ReproCheck> run_reproduction(const std::filesystem::path& fixtures_dir);

}  // namespace triplex
