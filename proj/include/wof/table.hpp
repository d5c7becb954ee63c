#pragma once

// Column-oriented result tables with CSV and JSON emitters. Numbers are
// stored as shortest round-trip text so parse(emit(t)) == t.

#include <string>
#include <vector>

namespace wof {

inline constexpr const char* kVersion = "1.0.0";

struct Table {
  std::vector<std::string> comments;  // emitted as "# ..." lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  bool operator==(const Table&) const = default;
};

std::string format_number(double v);

/// Standard header: version, seed and units.
std::vector<std::string> standard_comments(unsigned long long seed);

std::string to_csv(const Table& t);
Table parse_csv(const std::string& text);

/// {"comments": [...], "columns": [...], "rows": [{col: value}]}, numeric
/// cells as JSON numbers.
std::string to_json(const Table& t);

}  // namespace wof
