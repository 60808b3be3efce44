#pragma once

#include <string>
#include <vector>

namespace numenc {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const; // -1 when absent
};

/// Reads a comma-separated file with a header line. Double-quoted fields may
/// contain commas; quotes are stripped.
CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const CsvTable& table);

/// Round-trippable decimal form (17 significant digits).
std::string format_double(double v);

/// True for the cell markers treated as missing values.
bool is_missing_cell(const std::string& cell);

/// Strict double parse; returns false on any trailing garbage.
bool parse_double(const std::string& cell, double& out);

} // namespace numenc
