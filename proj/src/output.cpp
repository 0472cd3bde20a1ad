#include "dqd/output.hpp"

#include "dqd/config.hpp"
#include "dqd/error.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>

namespace dqd {

std::size_t Table::column(const std::string &name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name)
      return i;
  throw ConfigError("table has no column '" + name + "'");
}

namespace {

std::string sanitize(std::string s) {
  for (char &c : s)
    if (c == ',' || c == '\n' || c == '\r')
      c = ';';
  return s;
}

nlohmann::json cell_json(const Cell &c) {
  if (const auto *d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d))
      return nullptr;
    return *d;
  }
  if (const auto *l = std::get_if<long>(&c))
    return *l;
  return std::get<std::string>(c);
}

} // namespace

std::string cell_text(const Cell &c) {
  if (const auto *d = std::get_if<double>(&c))
    return std::isfinite(*d) ? format_number(*d) : "nan";
  if (const auto *l = std::get_if<long>(&c))
    return std::to_string(*l);
  return sanitize(std::get<std::string>(c));
}

void write_csv(std::ostream &os, const Table &t) {
  os << "# " << t.title << "\n";
  os << "# code_version = " << code_version << "\n";
  for (const auto &[k, v] : t.header)
    os << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto &row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << cell_text(row[i]);
    os << "\n";
  }
  for (const auto &[k, v] : t.summary)
    os << "# " << k << " = " << cell_text(v) << "\n";
}

void write_json(std::ostream &os, const Table &t) {
  nlohmann::ordered_json j;
  j["title"] = t.title;
  j["code_version"] = code_version;
  nlohmann::ordered_json h = nlohmann::ordered_json::object();
  for (const auto &[k, v] : t.header)
    h[k] = v;
  j["config"] = h;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto &row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      r[t.columns[i]] = cell_json(row[i]);
    rows.push_back(r);
  }
  j["rows"] = rows;
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto &[k, v] : t.summary)
    s[k] = cell_json(v);
  j["summary"] = s;
  os << j.dump(2) << "\n";
}

} // namespace dqd
