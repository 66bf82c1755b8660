#include "longmem/csv.hpp"

#include "longmem/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace longmem {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      std::string_view text = view.substr(1);
      table.comments.emplace_back(trim(text));
      continue;
    }
    const auto cells = split(view);
    if (!have_header) {
      for (auto c : cells) table.header.emplace_back(c);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
      throw InputError("expected " + std::to_string(table.header.size()) + " columns, found " +
                           std::to_string(cells.size()),
                       line_no);
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const std::string_view c = cells[k];
      double v = 0.0;
      const char* first = c.data();
      if (!c.empty() && c.front() == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, c.data() + c.size(), v);
      if (c.empty() || ec != std::errc() || ptr != c.data() + c.size() || !std::isfinite(v))
        throw InputError("column " + std::to_string(k + 1) + ": '" + std::string(c) + "' is not a finite number",
                         line_no);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw InputError("empty CSV input");
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t k = 0; k < rows[t].size(); ++k)
      table.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(k)) = rows[t][k];
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_csv(in);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const Eigen::MatrixXd& values,
               const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (Eigen::Index t = 0; t < values.rows(); ++t) {
    for (Eigen::Index k = 0; k < values.cols(); ++k) out << (k ? "," : "") << format_double(values(t, k));
    out << '\n';
  }
}

Eigen::MatrixXd transform(const Eigen::MatrixXd& prices, TransformMode mode) {
  if (prices.rows() < 2) throw InputError("transform needs at least two rows");
  for (Eigen::Index t = 0; t < prices.rows(); ++t)
    for (Eigen::Index i = 0; i < prices.cols(); ++i)
      if (!(prices(t, i) > 0.0))
        throw InputError("nonpositive value " + format_double(prices(t, i)) + " at row " + std::to_string(t + 1) +
                         ", column " + std::to_string(i + 1));
  const Eigen::MatrixXd logs = prices.array().log().matrix();
  Eigen::MatrixXd out = logs.bottomRows(prices.rows() - 1) - logs.topRows(prices.rows() - 1);
  if (mode == TransformMode::squared_log_return) out = out.array().square().matrix();
  return out;
}

}  // namespace longmem
