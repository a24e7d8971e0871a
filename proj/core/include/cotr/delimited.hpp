#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cotr {

/// Header row plus data rows of an RFC-4180-style delimited file. Fields may
/// be double-quoted; quoted fields may contain the delimiter, newlines, and
/// doubled quotes.
struct DelimitedTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Throws SchemaError on a row whose field count differs from the header,
/// or on an unterminated quoted field.
DelimitedTable read_delimited(std::istream& in, char delimiter);

void write_delimited(std::ostream& out, const DelimitedTable& table,
                     char delimiter);

/// Quotes a field iff it contains the delimiter, a quote, or a newline.
std::string delimited_quote(const std::string& field, char delimiter);

}  // namespace cotr
