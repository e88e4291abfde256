#include "table.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace skin::cli {

namespace {

std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return fmt::format("{:.17g}", v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>)
                return v;
            else
                return fmt::format("{}", v);
        },
        c);
}

}  // namespace

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("table '" + name + "': row width differs from header");
    rows.push_back(std::move(row));
}

std::filesystem::path write_table(const Table& t, const std::filesystem::path& dir, Format format) {
    std::filesystem::create_directories(dir);
    const auto path = dir / (t.name + (format == Format::Csv ? ".csv" : ".json"));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
            out << '\n';
        }
    } else {
        // Numbers are written as raw 17-digit literals to keep the CSV and JSON
        // values identical.
        out << "{\"columns\":[";
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << '"' << t.columns[i] << '"';
        out << "],\"rows\":[";
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            out << (r ? ",\n[" : "\n[");
            for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
                const Cell& c = t.rows[r][i];
                out << (i ? "," : "");
                if (std::holds_alternative<std::string>(c))
                    out << nlohmann::json(std::get<std::string>(c)).dump();
                else if (std::holds_alternative<double>(c) && !std::isfinite(std::get<double>(c)))
                    out << "null";
                else
                    out << csv_cell(c);
            }
            out << ']';
        }
        out << "]}\n";
    }
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
    return path;
}

}  // namespace skin::cli
