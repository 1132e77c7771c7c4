#include "refscore/csv.hpp"

#include "refscore/errors.hpp"
#include "refscore/util.hpp"

namespace refscore {

int CsvTable::column(std::string_view name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            end_row();
            ++i;
        } else if (c == '\n' || c == '\r') {
            end_row();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw Error("malformed-csv", "unterminated quoted field");
    if (field_started || !row.empty()) end_row();

    // Drop rows that are entirely empty (trailing blank lines).
    std::vector<std::vector<std::string>> out;
    for (auto& r : rows) {
        if (r.size() == 1 && r[0].empty()) continue;
        out.push_back(std::move(r));
    }
    return out;
}

CsvTable read_delimited_file(const std::filesystem::path& path, char delimiter) {
    auto rows = parse_delimited(read_file(path), delimiter);
    if (rows.empty()) throw Error("malformed-csv", "empty file: " + path.string());
    CsvTable table;
    table.header = std::move(rows.front());
    table.rows.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
    return table;
}

std::string csv_field(std::string_view value, char delimiter) {
    bool needs_quotes = value.find_first_of("\"\r\n") != std::string_view::npos ||
                        value.find(delimiter) != std::string_view::npos;
    if (!needs_quotes) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields, char delimiter) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += delimiter;
        out += csv_field(fields[i], delimiter);
    }
    out += '\n';
    return out;
}

} // namespace refscore
