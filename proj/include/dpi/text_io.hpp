#pragma once

// Plain-text interchange: numeric matrices (one row per line, space
// separated, '.' decimal point regardless of locale) and CSV signal tables.

#include <Eigen/Core>

#include <string>
#include <vector>

namespace dpi {

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

void write_matrix(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(const std::string& path);

/// Header row of labels, then one row per sample and one column per label.
struct CsvTable {
  std::vector<std::string> labels;
  /// samples x channels
  Eigen::MatrixXd data;
};

/// Errors name the file and the offending row/column (1-based, header = row 1).
CsvTable read_csv(const std::string& path);

}  // namespace dpi
