#ifndef REFSCORE_CSV_HPP
#define REFSCORE_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace refscore {

// RFC 4180-style delimiter-separated values: quoted fields may contain the
// delimiter, doubled quotes and embedded newlines. CRLF and LF both accepted.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column, -1 if absent.
    int column(std::string_view name) const;
};

std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter);

CsvTable read_delimited_file(const std::filesystem::path& path, char delimiter);

std::string csv_field(std::string_view value, char delimiter);
std::string csv_row(const std::vector<std::string>& fields, char delimiter = ',');

} // namespace refscore

#endif
