#ifndef ZKLAB_CSV_HPP
#define ZKLAB_CSV_HPP

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zklab/errors.hpp"

namespace zklab {

// Render a double with 17 significant digits: parsing the text recovers the
// exact bit pattern.
inline std::string csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_bool(bool b) { return b ? "1" : "0"; }

// Rows of pre-rendered cells under a fixed column schema. Tables are built
// deterministically: same config and seed, same bytes.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != columns.size())
            throw invalid_input("ResultTable: row width " + std::to_string(cells.size()) +
                                " != column count " + std::to_string(columns.size()));
        rows.push_back(std::move(cells));
    }

    bool empty() const { return rows.empty(); }

    std::string to_csv() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out << ',';
            out << columns[i];
        }
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                out << row[i];
            }
            out << '\n';
        }
        return out.str();
    }
};

inline void emit_csv(const ResultTable& table, const std::string& path) {
    if (table.empty()) throw invalid_input("emit_csv: table has no rows");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("emit_csv: cannot open '" + path + "': " + std::strerror(errno));
    out << table.to_csv();
    out.flush();
    if (!out) throw io_error("emit_csv: write to '" + path + "' failed: " + std::strerror(errno));
}

inline ResultTable parse_csv(const std::string& text) {
    ResultTable t;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.empty()) continue;
        if (line.back() == ',') cells.push_back("");
        if (header) {
            t.columns = cells;
            header = false;
        } else {
            t.add_row(cells);
        }
    }
    return t;
}

// FNV-1a, used to stamp result tables with the config they came from.
inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace zklab

#endif
