#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "spsw/table.hpp"

namespace spsw {

// RFC-4180-style CSV. Fields containing the delimiter, quotes, or line
// breaks are quoted on write; quotes are doubled. The reader accepts quoted
// fields spanning lines and tolerates CRLF endings, so save/load round-trips
// value-exactly for every table this toolkit produces.

Table table_from_csv(std::string_view text, bool has_header);
std::string table_to_csv(const Table& table);

Table load_table(const std::filesystem::path& path, bool has_header = true);
void save_table(const Table& table, const std::filesystem::path& path);

}  // namespace spsw
