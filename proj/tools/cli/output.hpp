// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRACE_CLI_OUTPUT_HPP
#define DSRACE_CLI_OUTPUT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dsrace::cli {

inline constexpr int kSchemaVersion = 1;

/// Written as "inf" in CSV and null in JSON.
struct Unbounded {
    friend bool operator==(Unbounded, Unbounded) = default;
};

/// std::monostate is a missing value: empty in CSV, null in JSON.
using Cell = std::variant<std::monostate, Unbounded, bool, std::uint64_t, double, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws std::logic_error if the row width differs from columns.
    void add_row(std::vector<Cell> row);
};

enum class Format { Csv, Json };

Format parse_format(std::string_view name);

/// Shortest decimal string that round-trips.
std::string format_double(double value);

/// CSV: each table is a header line and its rows, tables separated by one
/// blank line. JSON: one object {"schema_version", "command", <name>: [rows]}.
void write_tables(std::ostream& out, Format format, std::string_view command, const std::vector<Table>& tables);

}  // namespace dsrace::cli

#endif  // DSRACE_CLI_OUTPUT_HPP
