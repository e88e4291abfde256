#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "config.hpp"
#include "skin/errors.hpp"
#include "tasks.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kConfig = 2;

int run(const std::string& task_name, const std::string& config_path, const std::string& out_override) {
    using namespace skin::cli;
    const Task task = parse_task(task_name);
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config '" + config_path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + config_path + "' is not valid JSON: " + e.what());
    }
    RunConfig cfg = parse_config(j);
    if (j.contains("task") && cfg.task != task)
        throw ConfigError(fmt::format("config task '{}' differs from the requested task '{}'", to_string(cfg.task),
                                      task_name));
    cfg.task = task;
    if (!out_override.empty()) cfg.output.dir = out_override;

    const TaskResult res = run_task(cfg);
    for (const auto& t : res.tables) {
        const auto path = write_table(t, cfg.output.dir, cfg.output.format);
        fmt::print("wrote {} ({} rows)\n", path.string(), t.rows.size());
    }
    if (!res.message.empty()) fmt::print(res.ok ? stdout : stderr, "{}\n", res.message);
    return res.ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic Lindbladian solver for the dissipative SSH chain"};
    std::string task;
    std::string config;
    std::string out;
    app.add_option("task", task, "spectrum | ness | modes | evolve | kspace | skin-scan | oracle-check")->required();
    app.add_option("--config", config, "JSON run configuration")->required();
    app.add_option("--out", out, "output directory (overrides output.dir)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        return run(task, config, out);
    } catch (const skin::cli::ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kConfig;
    } catch (const skin::NumericalError& e) {
        fmt::print(stderr, "numerical failure: {} [module {}, tolerance {:g}]\n", e.what(), e.module(), e.tolerance());
        return kNumerical;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kNumerical;
    }
}
