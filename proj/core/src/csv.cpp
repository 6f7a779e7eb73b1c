#include "eaifd/csv.hpp"

#include "eaifd/error.hpp"

#include <fstream>
#include <sstream>

namespace eaifd {

namespace {

std::vector<std::vector<std::string>> split_records(std::string_view text, char delim) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started && field.empty()) {
            in_quotes = true;
            field_started = true;
        } else if (c == delim) {
            end_field();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            // handled by the '\n' branch on the next iteration
        } else if (c == '\n') {
            end_record();
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw DataError("unterminated quoted field near line " + std::to_string(line));
    // A final record without trailing newline.
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

} // namespace

CsvTable parse_csv(std::string_view text, const CsvOptions& options) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    auto records = split_records(text, options.delimiter);
    CsvTable table;
    if (records.empty()) return table;

    std::size_t first_data = 0;
    if (options.has_header) {
        table.header = std::move(records.front());
        first_data = 1;
    } else {
        for (std::size_t i = 0; i < records.front().size(); ++i) table.header.push_back("col" + std::to_string(i));
    }
    const std::size_t arity = table.header.size();
    table.rows.reserve(records.size() - first_data);
    for (std::size_t r = first_data; r < records.size(); ++r) {
        auto& rec = records[r];
        if (rec.size() != arity) {
            throw DataError("ragged row " + std::to_string(r - first_data + 1) + ": expected " + std::to_string(arity) +
                            " fields, found " + std::to_string(rec.size()));
        }
        table.rows.push_back(std::move(rec));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.empty()) throw DataError("empty file: " + path.string());
    return parse_csv(text, options);
}

std::string csv_escape(std::string_view field, char delimiter) {
    if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace eaifd
