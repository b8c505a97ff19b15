#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pi::csv {

// Carries the 1-based line number of the offending record.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Row {
  std::size_t line = 0;  // 1-based line in the source stream
  std::vector<std::string> fields;
};

// Splits one CSV record on commas. No quoting support; none of our
// formats need it.
std::vector<std::string> split_fields(const std::string& line);

// Reads a whole table, checking the header matches `header` exactly and that
// every data row has the same number of fields. Blank lines are skipped,
// trailing '\r' is stripped.
std::vector<Row> read_table(std::istream& in, const std::string& source,
                            const std::vector<std::string>& header);

// Strict numeric parsing: the whole field must be consumed.
double parse_double(const std::string& field, const std::string& source, std::size_t line);
long parse_long(const std::string& field, const std::string& source, std::size_t line);

// Shortest round-trip representation ("nan"/"inf"/"-inf" for specials).
std::string format_number(double value);

// Fixed-point with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

}  // namespace pi::csv
