#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cloneval::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may contain commas, quotes ("") and line
// breaks. A trailing empty line is ignored.
std::vector<Row> read(std::istream& in);
std::vector<Row> read_string(std::string_view text);

// Quotes a field only when it needs it.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

// Shortest decimal text that parses back to the identical double.
std::string format_exact(double value);
// Fixed 6 decimal places, used for every report.
std::string format_fixed6(double value);
// Throws Error(kMalformedRow) on trailing garbage or empty input.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

}  // namespace cloneval::csv
