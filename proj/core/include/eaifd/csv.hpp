#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eaifd {

struct CsvOptions {
    char delimiter = ',';
    /// When false, column names are synthesized as col0, col1, ...
    bool has_header = true;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 parsing: quoted fields, doubled quotes, CRLF or LF line ends.
/// Throws DataError on unterminated quotes or rows whose arity differs from
/// the header (the message names the 1-based data row).
CsvTable parse_csv(std::string_view text, const CsvOptions& options = {});

/// Reads and parses a file. An empty file is an error.
CsvTable read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Quotes a field when it contains the delimiter, a quote or a line break.
std::string csv_escape(std::string_view field, char delimiter = ',');

} // namespace eaifd
