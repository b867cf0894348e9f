#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "triplex/labeled.hpp"

namespace test_helpers {

inline std::vector<std::string> labels(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline triplex::BinaryIncidence make_incidence(
    std::vector<std::string> rows, std::vector<std::string> cols,
    const std::vector<std::vector<double>>& values,
    triplex::AxisKind rk = triplex::AxisKind::Country,
    triplex::AxisKind ck = triplex::AxisKind::Product) {
  Eigen::MatrixXd m(values.size(), values[0].size());
  for (size_t i = 0; i < values.size(); ++i) {
    for (size_t j = 0; j < values[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i][j];
    }
  }
  return triplex::BinaryIncidence(std::move(rows), std::move(cols), std::move(m), rk, ck);
}

inline triplex::ValuedMatrix make_valued(std::vector<std::string> rows,
                                         std::vector<std::string> cols,
                                         const std::vector<std::vector<double>>& values,
                                         triplex::AxisKind rk = triplex::AxisKind::Country,
                                         triplex::AxisKind ck = triplex::AxisKind::Product) {
  Eigen::MatrixXd m(values.size(), values[0].size());
  for (size_t i = 0; i < values.size(); ++i) {
    for (size_t j = 0; j < values[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i][j];
    }
  }
  return triplex::ValuedMatrix(std::move(rows), std::move(cols), std::move(m), rk, ck);
}

/// Random 0/1 matrix with no zero row or column.
inline Eigen::MatrixXd random_pruned_binary(std::mt19937& rng, int rows, int cols,
                                            double density) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) m(i, j) = unif(rng) < density ? 1.0 : 0.0;
    }
    if (m.rowwise().sum().minCoeff() > 0 && m.colwise().sum().minCoeff() > 0) return m;
  }
}

inline triplex::BinaryIncidence random_incidence(std::mt19937& rng, int rows, int cols,
                                                 double density,
                                                 triplex::AxisKind rk = triplex::AxisKind::Country,
                                                 triplex::AxisKind ck = triplex::AxisKind::Product,
                                                 const std::string& row_prefix = "c",
                                                 const std::string& col_prefix = "p") {
  return triplex::BinaryIncidence(labels(row_prefix, rows), labels(col_prefix, cols),
                                  random_pruned_binary(rng, rows, cols, density), rk, ck);
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("triplex_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::filesystem::path file(const std::string& name, const std::string& contents) const {
    auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    out << contents;
    return path;
  }
  const std::filesystem::path& path() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace test_helpers
