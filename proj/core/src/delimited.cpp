#include "cotr/delimited.hpp"

#include "cotr/errors.hpp"

#include <istream>
#include <ostream>

namespace cotr {

namespace {

// Reads one logical record (quoted fields may span lines). Returns false on
// clean EOF before any content.
bool read_record(std::istream& in, char delimiter,
                 std::vector<std::string>& fields, std::size_t record_index) {
  fields.clear();
  int c = in.get();
  if (c == std::char_traits<char>::eof()) return false;

  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  while (true) {
    if (c == std::char_traits<char>::eof()) {
      if (in_quotes) {
        throw SchemaError("unterminated quoted field in record " +
                          std::to_string(record_index));
      }
      fields.push_back(std::move(field));
      return true;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (ch == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (ch == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
      field_started = true;
    }
    c = in.get();
  }
}

}  // namespace

DelimitedTable read_delimited(std::istream& in, char delimiter) {
  DelimitedTable table;
  std::vector<std::string> record;
  if (!read_record(in, delimiter, record, 0)) return table;
  table.header = record;
  std::size_t index = 1;
  while (read_record(in, delimiter, record, index)) {
    // A blank final line produces one empty field; ignore it.
    if (record.size() == 1 && record[0].empty() &&
        in.peek() == std::char_traits<char>::eof()) {
      break;
    }
    if (record.size() != table.header.size()) {
      throw SchemaError("record " + std::to_string(index) + " has " +
                        std::to_string(record.size()) + " fields, header has " +
                        std::to_string(table.header.size()));
    }
    table.rows.push_back(record);
    ++index;
  }
  return table;
}

std::string delimited_quote(const std::string& field, char delimiter) {
  const bool needs_quotes =
      field.find(delimiter) != std::string::npos ||
      field.find('"') != std::string::npos ||
      field.find('\n') != std::string::npos ||
      field.find('\r') != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_delimited(std::ostream& out, const DelimitedTable& table,
                     char delimiter) {
  const auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out.put(delimiter);
      out << delimited_quote(row[i], delimiter);
    }
    out.put('\n');
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

}  // namespace cotr
