#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dqd {

using Cell = std::variant<double, long, std::string>;

/// A rectangular result with its provenance: `header` carries the resolved
/// configuration, `summary` holds footer facts (e.g. a map argmax).
struct Table {
  std::string title;
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  std::size_t column(const std::string &name) const; // throws if absent
};

inline constexpr const char *code_version = "dqd 1.0.0";

/// Comma-separated, '#'-prefixed header and footer comments, numbers with
/// 12 significant digits in scientific notation.
void write_csv(std::ostream &os, const Table &t);
void write_json(std::ostream &os, const Table &t);
std::string cell_text(const Cell &c);

} // namespace dqd
