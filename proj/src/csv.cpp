#include "spsw/csv.hpp"

#include <fstream>
#include <sstream>

#include "spsw/error.hpp"

namespace spsw {

namespace {

bool needs_quoting(std::string_view value) {
  return value.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_field(std::string& out, std::string_view value) {
  if (!needs_quoting(value)) {
    out.append(value);
    return;
  }
  out.push_back('"');
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

// Splits CSV text into records. Quoted fields may contain delimiters and
// line breaks; a bare CR directly before LF is treated as part of the line
// ending, not data.
std::vector<std::vector<std::string>> parse_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;

  std::size_t i = 0;
  const std::size_t len = text.size();
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  while (i < len) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < len && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        field.push_back(c);
        ++i;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field.empty() && !field_was_quoted) {
          in_quotes = true;
          field_was_quoted = true;
        } else {
          // Quote inside an unquoted field: keep it as data.
          field.push_back(c);
        }
        ++i;
        break;
      case ',':
        end_field();
        ++i;
        break;
      case '\r':
        if (i + 1 < len && text[i + 1] == '\n') {
          end_record();
          i += 2;
        } else {
          end_record();
          ++i;
        }
        break;
      case '\n':
        end_record();
        ++i;
        break;
      default:
        field.push_back(c);
        ++i;
        break;
    }
  }
  if (in_quotes)
    throw ParseError("unterminated quoted field at end of input",
                     records.size() + 1);
  if (!field.empty() || field_was_quoted || !record.empty()) end_record();
  return records;
}

}  // namespace

Table table_from_csv(std::string_view text, bool has_header) {
  auto records = parse_records(text);
  if (records.empty())
    throw ParseError("empty input: no header or rows", 1);

  Schema schema;
  std::size_t first_data = 0;
  if (has_header) {
    schema = Schema(records[0]);
    first_data = 1;
  } else {
    std::vector<std::string> names;
    names.reserve(records[0].size());
    for (std::size_t i = 0; i < records[0].size(); ++i)
      names.push_back("col" + std::to_string(i));
    schema = Schema(std::move(names));
  }

  Table table(schema);
  table.reserve(records.size() - first_data);
  for (std::size_t r = first_data; r < records.size(); ++r) {
    if (records[r].size() != schema.arity()) {
      std::ostringstream msg;
      msg << "record " << (r + 1) << ": expected " << schema.arity()
          << " fields, got " << records[r].size();
      throw ParseError(msg.str(), r + 1);
    }
    table.append(std::move(records[r]));
  }
  return table;
}

std::string table_to_csv(const Table& table) {
  std::string out;
  const auto& names = table.schema().attribute_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out.push_back(',');
    write_field(out, names[i]);
  }
  out.push_back('\n');
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      write_field(out, row[i]);
    }
    out.push_back('\n');
  }
  return out;
}

Table load_table(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return table_from_csv(buf.str(), has_header);
}

void save_table(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << table_to_csv(table);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace spsw
