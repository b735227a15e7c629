// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "cli/output.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <stdexcept>

namespace dsrace::cli {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};

std::string csv_cell(const Cell& cell)
{
    return std::visit(Overloaded{
                          [](std::monostate) { return std::string(); },
                          [](Unbounded) { return std::string("inf"); },
                          [](bool b) { return std::string(b ? "true" : "false"); },
                          [](std::uint64_t v) { return std::to_string(v); },
                          [](double v) { return format_double(v); },
                          [](const std::string& s) { return s; },
                      },
                      cell);
}

nlohmann::ordered_json json_cell(const Cell& cell)
{
    return std::visit(Overloaded{
                          [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                          [](Unbounded) { return nlohmann::ordered_json(nullptr); },
                          [](bool b) { return nlohmann::ordered_json(b); },
                          [](std::uint64_t v) { return nlohmann::ordered_json(v); },
                          [](double v) { return nlohmann::ordered_json(v); },
                          [](const std::string& s) { return nlohmann::ordered_json(s); },
                      },
                      cell);
}

}  // namespace

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size()) throw std::logic_error("row width does not match table " + name);
    rows.push_back(std::move(row));
}

Format parse_format(std::string_view name)
{
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

void write_tables(std::ostream& out, Format format, std::string_view command, const std::vector<Table>& tables)
{
    if (format == Format::Csv) {
        bool first = true;
        for (const Table& table : tables) {
            if (!first) out << '\n';
            first = false;
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                out << (c ? "," : "") << table.columns[c];
            }
            out << '\n';
            for (const auto& row : table.rows) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    out << (c ? "," : "") << csv_cell(row[c]);
                }
                out << '\n';
            }
        }
        return;
    }

    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = std::string(command);
    for (const Table& table : tables) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c]);
            rows.push_back(std::move(obj));
        }
        doc[table.name] = std::move(rows);
    }
    out << doc.dump(2) << '\n';
}

}  // namespace dsrace::cli
