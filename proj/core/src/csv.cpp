#include "pi/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

namespace pi::csv {

namespace {

std::string location(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(location(source, line) + ": " + what), line_(line) {}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<Row> read_table(std::istream& in, const std::string& source,
                            const std::vector<std::string>& header) {
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (!header_seen) {
      if (fields != header) {
        throw ParseError(source, line_no, "unexpected header: '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()));
    }
    rows.push_back(Row{line_no, std::move(fields)});
  }
  if (!header_seen) {
    throw ParseError(source, line_no == 0 ? 1 : line_no, "missing header");
  }
  return rows;
}

double parse_double(const std::string& field, const std::string& source, std::size_t line) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(source, line, "not a number: '" + field + "'");
  }
  return value;
}

long parse_long(const std::string& field, const std::string& source, std::size_t line) {
  long value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(source, line, "not an integer: '" + field + "'");
  }
  return value;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed,
                                 decimals);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace pi::csv
