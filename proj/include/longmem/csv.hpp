#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace longmem {

// Comma-separated numeric table: lines starting with '#' are comments, the
// first remaining line is the header.
struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;
  std::vector<std::string> comments;
};

// Throws InputError (with the 1-based line) on ragged rows or non-numeric cells.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

// 17 significant digits, LF endings. Each comment line is written as "# <text>".
void write_csv(std::ostream& out, const std::vector<std::string>& header, const Eigen::MatrixXd& values,
               const std::vector<std::string>& comments = {});

std::string format_double(double v);

enum class TransformMode { log_return, squared_log_return };

// n-1 rows of log(x_{t+1}) - log(x_t), optionally squared. Throws InputError
// naming row and column of the first nonpositive value.
Eigen::MatrixXd transform(const Eigen::MatrixXd& prices, TransformMode mode);

}  // namespace longmem
