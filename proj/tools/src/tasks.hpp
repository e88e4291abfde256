#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace skin::cli {

struct TaskResult {
    std::vector<Table> tables;
    bool ok = true;       // false when a verification task found a mismatch
    std::string message;  // human-readable summary for stderr
};

// Runs cfg.task. Sites, modes and pair indices in the tables are 1-based.
TaskResult run_task(const RunConfig& cfg);

// Reads a Majorana covariance file {"re": [[...]], "im": [[...]]}.
Mat load_covariance(const std::string& path);

}  // namespace skin::cli
