#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace twoatom {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, shortest of fixed/exponent ("%.17g"); "nan" and
/// "inf"/"-inf" for non-finite values.
std::string format_double(double v);

/// Header row then one line per row, ',' separated, '\n' terminated. String
/// cells containing ',', '"' or a newline are quoted.
void write_csv(std::ostream& out, const Table& table);

}  // namespace twoatom
