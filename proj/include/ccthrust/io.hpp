#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ccthrust/errors.hpp"

namespace ccthrust {

enum class OutputFormat { csv, json };

// Uniform numeric table with ordered metadata.  All emission is
// fixed-format so identical inputs yield byte-identical output.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

// 13 significant digits: satisfies the >= 9 significant digit contract and
// round-trips through parse to better than 1e-12 relative.
inline std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

inline void emit_table(const Table& t, OutputFormat format, std::ostream& os) {
    if (t.rows.empty()) throw IoError("emit_table: no rows to emit");
    for (const auto& row : t.rows)
        if (row.size() != t.columns.size())
            throw IoError("emit_table: row width does not match header");

    if (format == OutputFormat::csv) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) os << ',';
            os << t.columns[c];
        }
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ',';
                os << format_sci(row[c]);
            }
            os << '\n';
        }
    } else {
        nlohmann::ordered_json j;
        j["metadata"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
        j["columns"] = t.columns;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = row[c];
            j["rows"].push_back(std::move(obj));
        }
        os << j.dump(2) << '\n';
    }
    os.flush();
    if (!os) throw IoError("emit_table: stream write failed");
}

// Minimal CSV reader for round-trip checks and downstream tooling.
inline Table parse_csv(std::istream& is) {
    Table t;
    std::string line;
    if (!std::getline(is, line)) throw IoError("parse_csv: empty input");
    std::size_t start = 0;
    while (start <= line.size()) {
        const std::size_t comma = line.find(',', start);
        const std::size_t end = comma == std::string::npos ? line.size() : comma;
        t.columns.push_back(line.substr(start, end - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t s = 0;
        while (s <= line.size()) {
            const std::size_t comma = line.find(',', s);
            const std::size_t end = comma == std::string::npos ? line.size() : comma;
            try {
                row.push_back(std::stod(line.substr(s, end - s)));
            } catch (const std::exception&) {
                throw IoError("parse_csv: bad numeric field: " + line.substr(s, end - s));
            }
            if (comma == std::string::npos) break;
            s = comma + 1;
        }
        if (row.size() != t.columns.size())
            throw IoError("parse_csv: row width does not match header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace ccthrust
