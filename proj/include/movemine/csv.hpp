#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "movemine/error.hpp"

namespace movemine {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(fields[i]);
  }
  os << '\n';
}

// Splits one line into fields; double quotes wrap fields containing commas,
// with "" as the embedded quote. Embedded newlines are not supported.
inline std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) fail("format", "unterminated quote in CSV line");
  out.push_back(std::move(field));
  return out;
}

// Reads the next non-empty line as a CSV row; returns false at EOF.
inline bool read_csv_row(std::istream& is, std::vector<std::string>& row) {
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    row = parse_csv_line(line);
    return true;
  }
  return false;
}

}  // namespace movemine
