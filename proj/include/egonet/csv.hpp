#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "egonet/error.hpp"

namespace egonet {

/// A problem with one input row. `column` is 1-based, 0 for the whole row.
struct Diagnostic {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

inline std::string to_string(const Diagnostic& d) {
  std::string s = d.file + ":" + std::to_string(d.line);
  if (d.column) s += ":" + std::to_string(d.column);
  return s + ": " + d.message;
}

struct CsvRow {
  std::size_t line = 0;  // physical line where the record starts
  std::vector<std::string> fields;
};

/// Comma-separated values: first line is the header, fields may be quoted
/// with '"' and quotes inside quoted fields are doubled. CRLF and a UTF-8
/// byte-order mark are accepted. Blank lines are skipped. An unterminated
/// quote discards the last record and adds a diagnostic.
inline std::vector<CsvRow> parse_csv(std::string_view text, const std::string& file,
                                     std::vector<Diagnostic>& diagnostics) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row = CsvRow{};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          quoted = true;
          field_started = true;
        } else {
          field += c;
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        row.line = line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) {
    diagnostics.push_back({file, row.line, row.fields.size() + 1, "unterminated quoted field"});
  } else if (!field.empty() || !row.fields.empty()) {
    end_row();
  }
  return rows;
}

/// Quotes a field only when it contains a comma, quote or line break.
inline std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out + "\n";
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path)) {
    throw Error(ErrorCode::MissingFile, "cannot read '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::MissingFile, "cannot write '" + path.string() + "'");
  out << content;
}

/// Splits on ';', trimming spaces and dropping empty items.
inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string_view::npos) end = s.size();
    auto item = s.substr(start, end - start);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

inline std::string join_list(const auto& items, std::string_view sep = ";") {
  std::string out;
  bool first = true;
  for (const auto& i : items) {
    if (!first) out += sep;
    out += i;
    first = false;
  }
  return out;
}

}  // namespace egonet
