#ifndef WPB_IO_HPP
#define WPB_IO_HPP

#include <algorithm>
#include <cstdio>
#include <limits>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace wpb::io
{

inline constexpr const char* version = "0.1.0";

inline auto fmt(double v) -> std::string
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV file whose first line is "# " followed by a one-line JSON metadata object.
class CsvWriter
{
public:
  CsvWriter(const std::string& path, nlohmann::json meta, const std::vector<std::string>& columns)
    : out_(path)
    , width_(columns.size())
  {
    if (!out_)
      throw std::runtime_error("cannot open '" + path + "' for writing");
    meta["version"] = version;
    out_ << "# " << meta.dump() << '\n';
    write_cells(columns);
  }

  void row(const std::vector<double>& values)
  {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values)
      cells.push_back(fmt(v));
    write_cells(cells);
  }

  void row(const std::vector<std::string>& cells) { write_cells(cells); }

  // trailing summary rows stay comment-prefixed so plain CSV readers skip them
  void summary(const std::string& key, double value) { out_ << "# summary," << key << ',' << fmt(value) << '\n'; }
  void summary(const std::string& key, const std::string& value) { out_ << "# summary," << key << ',' << value << '\n'; }

private:
  void write_cells(const std::vector<std::string>& cells)
  {
    if (cells.size() != width_)
      throw std::logic_error("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    if (!out_)
      throw std::runtime_error("CsvWriter: write failed");
  }

  std::ofstream out_;
  std::size_t width_;
};

struct CsvTable
{
  nlohmann::json meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::vector<double>> rows; // NaN where a cell is not a number

  auto column(const std::string& name) const -> std::size_t
  {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name)
        return i;
    throw std::invalid_argument("no column named '" + name + "'");
  }
  auto has(const std::string& name) const
  {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
  }
};

/// Reads CSV written by CsvWriter (or any plain CSV with a header line).
inline auto read_csv(const std::string& path) -> CsvTable
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    if (line[0] == '#') {
      if (!header && t.meta.is_null() && line.rfind("# {", 0) == 0)
        t.meta = nlohmann::json::parse(line.substr(2), nullptr, false);
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      cells.push_back(cell);
    if (!header) {
      t.columns = cells;
      header = true;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw std::runtime_error("'" + path + "': ragged row");
    std::vector<double> r;
    for (auto& c : cells) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        std::size_t used = 0;
        double x = std::stod(c, &used);
        if (used == c.size())
          v = x;
      } catch (const std::exception&) {
      }
      r.push_back(v);
    }
    t.rows.push_back(std::move(r));
    t.cells.push_back(std::move(cells));
  }
  if (!header)
    throw std::runtime_error("'" + path + "': no header line");
  return t;
}

inline auto objective_columns(std::size_t m, const std::string& prefix = "f")
{
  std::vector<std::string> c;
  for (std::size_t j = 1; j <= m; ++j)
    c.push_back(prefix + std::to_string(j));
  return c;
}

} // namespace wpb::io

#endif
