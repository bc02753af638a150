#include "nlskdv/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlskdv {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string quote(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_row(std::string& out, const CsvRow& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += quote(row[i]);
    }
    out += "\r\n";
}

}  // namespace

std::string csv_string(const CsvRow& header, const std::vector<CsvRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    std::string out;
    append_row(out, header);
    for (const auto& row : rows) append_row(out, row);
    return out;
}

void emit_csv(const CsvRow& header, const std::vector<CsvRow>& rows, const std::string& path) {
    const std::string text = csv_string(header, rows);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_csv: cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
}

CsvTable parse_csv(const std::string& text) {
    std::vector<CsvRow> records;
    CsvRow current;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&]() {
        current.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&]() {
        if (field_started || !current.empty() || !field.empty()) {
            end_field();
            records.push_back(current);
            current.clear();
        }
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
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"': in_quotes = true; field_started = true; break;
            case ',': end_field(); field_started = true; break;
            case '\r': break;
            case '\n': end_record(); break;
            default: field += c; field_started = true;
        }
    }
    end_record();

    CsvTable table;
    if (records.empty()) throw std::invalid_argument("parse_csv: empty input");
    table.header = records.front();
    table.rows.assign(records.begin() + 1, records.end());
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_csv: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_csv(ss.str());
}

}  // namespace nlskdv
