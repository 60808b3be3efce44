#include "numenc/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "numenc/errors.hpp"

namespace numenc {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            out.push_back(field);
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    out.push_back(field);
    for (auto& f : out) {
        while (!f.empty() && std::isspace(static_cast<unsigned char>(f.front())))
            f.erase(f.begin());
        while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back())))
            f.pop_back();
    }
    return out;
}

} // namespace

int CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_line(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        table.rows.push_back(split_line(line));
        if (table.rows.back().size() != table.header.size())
            throw DataError("ragged row in " + path);
    }
    return table;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            const bool needs_quotes = row[i].find(',') != std::string::npos;
            if (needs_quotes) out << '"' << row[i] << '"';
            else out << row[i];
        }
        out << '\n';
    };
    emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool is_missing_cell(const std::string& cell) {
    if (cell.empty()) return true;
    std::string lower;
    for (char ch : cell) lower.push_back(static_cast<char>(std::tolower(ch)));
    return lower == "na" || lower == "nan" || lower == "null" || cell == "?";
}

bool parse_double(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(cell, &pos);
    } catch (...) {
        return false;
    }
    return pos == cell.size();
}

} // namespace numenc
