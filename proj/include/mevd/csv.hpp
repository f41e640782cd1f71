#pragma once

// Minimal CSV tables: schema-tagged rows out, plain comma splitting back in.
// Cells never contain commas or quotes, so no quoting is needed.

#include <sstream>
#include <string>
#include <vector>

#include "mevd/error.hpp"
#include "mevd/rational.hpp"

namespace mevd::csv {

inline constexpr const char* kCurves = "curves/v1";
inline constexpr const char* kCurves2 = "curves2/v1";
inline constexpr const char* kEstimates = "estimates/v1";
inline constexpr const char* kPickands = "pickands/v1";

inline std::string cell(double x) { return format_decimal(x, 15); }
inline std::string cell(const Rational& r) { return format_decimal(to_double(r), 15); }
inline std::string cell(std::uint64_t x) { return std::to_string(x); }
inline std::string cell(unsigned x) { return std::to_string(x); }
inline std::string cell(const std::string& s) {
  if (s.find_first_of(",\n\"") != std::string::npos) throw Error("csv cell may not contain separators: " + s);
  return s;
}
inline std::string cell(const char* s) { return cell(std::string(s)); }

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw Error("csv row width differs from header");
    rows_.push_back(std::move(row));
  }

  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<std::string>& header() const noexcept { return header_; }

  std::string str() const {
    std::ostringstream out;
    write(out, header_);
    for (const auto& r : rows_) write(out, r);
    return out.str();
  }

 private:
  static void write(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Parsed {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw Error("csv has no column " + name);
  }
};

inline Parsed parse(const std::string& text) {
  Parsed p;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string c;
    std::istringstream ls(line);
    while (std::getline(ls, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      p.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != p.header.size()) throw Error("csv row width differs from header");
      p.rows.push_back(std::move(cells));
    }
  }
  return p;
}

}  // namespace mevd::csv
