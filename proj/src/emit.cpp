#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "odwf/experiment.hpp"

namespace odwf::experiment {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return csv_field(*s);
    }
    if (const auto* d = std::get_if<double>(&cell)) {
        return format_number(*d);
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    return {};
}

void write_csv(const ResultTable& table, std::ostream& out) {
    const auto& names = columns();
    for (std::size_t c = 0; c < names.size(); ++c) {
        out << (c ? "," : "") << names[c];
    }
    out << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << cell_text(row[c]);
        }
        out << "\r\n";
    }
}

void write_jsonl(const ResultTable& table, std::ostream& out) {
    const auto& names = columns();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto& cell = row[c];
            if (const auto* s = std::get_if<std::string>(&cell)) {
                obj[names[c]] = *s;
            } else if (const auto* d = std::get_if<double>(&cell)) {
                if (std::isfinite(*d)) {
                    obj[names[c]] = *d;
                }
            } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
                obj[names[c]] = *i;
            }
        }
        out << obj.dump() << '\n';
    }
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc()) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buffer, ptr);
}

std::string render(const ResultTable& table, Format format) {
    std::ostringstream out;
    emit(table, format, out);
    return out.str();
}

void emit(const ResultTable& table, Format format, std::ostream& out) {
    if (format == Format::Csv) {
        write_csv(table, out);
    } else {
        write_jsonl(table, out);
    }
}

void emit(const ResultTable& table, Format format, const std::string& path) {
    if (path == "-") {
        emit(table, format, std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write output file '" + path + "'");
    }
    emit(table, format, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

}  // namespace odwf::experiment
