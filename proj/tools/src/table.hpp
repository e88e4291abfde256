#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace skin::cli {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

// Writes <dir>/<name>.csv or .json; doubles use 17 significant digits so that
// identical inputs give byte-identical files.
std::filesystem::path write_table(const Table& t, const std::filesystem::path& dir, Format format);

}  // namespace skin::cli
