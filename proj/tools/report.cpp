#include "report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace shimura::io {

namespace {

std::string cell(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

bool is_row_table(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  return std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); });
}

bool is_flat(const Json& j) {
  if (!j.is_array() && !j.is_object()) return true;
  if (j.is_object()) return false;
  return std::none_of(j.begin(), j.end(),
                      [](const Json& x) { return x.is_array() || x.is_object(); });
}

void render_rows(const Json& rows, const std::string& indent, std::ostringstream& os) {
  std::vector<std::string> columns;
  for (const auto& row : rows)
    for (const auto& [key, value] : row.items())
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    width[c] = columns[c].size();
    for (const auto& row : rows)
      width[c] = std::max(width[c], row.contains(columns[c]) ? cell(row[columns[c]]).size() : 1);
  }
  auto line = [&](auto&& text_of) {
    std::string s = indent;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::string t = text_of(c);
      s += t;
      if (c + 1 < columns.size()) s += std::string(width[c] - t.size() + 2, ' ');
    }
    os << s << '\n';
  };
  line([&](std::size_t c) { return columns[c]; });
  line([&](std::size_t c) { return std::string(width[c], '-'); });
  for (const auto& row : rows)
    line([&](std::size_t c) {
      return row.contains(columns[c]) ? cell(row[columns[c]]) : std::string("-");
    });
}

void render_object(const Json& obj, const std::string& indent, std::ostringstream& os) {
  std::size_t key_width = 0;
  for (const auto& [key, value] : obj.items())
    if (is_flat(value)) key_width = std::max(key_width, key.size());
  for (const auto& [key, value] : obj.items()) {
    if (is_flat(value)) {
      os << indent << key << std::string(key_width - key.size() + 2, ' ') << cell(value) << '\n';
    } else if (value.is_object()) {
      os << indent << key << ":\n";
      render_object(value, indent + "  ", os);
    } else if (is_row_table(value)) {
      os << indent << key << ":\n";
      render_rows(value, indent + "  ", os);
    } else {
      os << indent << key << ":\n";
      for (const auto& row : value) os << indent << "  " << row.dump() << '\n';
    }
  }
}

}  // namespace

std::string render_table(const Json& report) {
  std::ostringstream os;
  if (report.is_object())
    render_object(report, "", os);
  else if (is_row_table(report))
    render_rows(report, "", os);
  else
    os << report.dump() << '\n';
  return os.str();
}

}  // namespace shimura::io
