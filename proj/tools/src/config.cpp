#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

namespace skin::cli {

using nlohmann::json;

namespace {

const std::vector<std::pair<Task, std::string>> kTasks{
    {Task::Spectrum, "spectrum"}, {Task::Ness, "ness"},         {Task::Modes, "modes"},
    {Task::Evolve, "evolve"},     {Task::Kspace, "kspace"},     {Task::SkinScan, "skin-scan"},
    {Task::OracleCheck, "oracle-check"}};

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

template <class T>
T get(const json& j, const std::string& where, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

double get_real(const json& j, const std::string& where, const char* key, double fallback) {
    if (j.contains(key) && !j.at(key).is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return get<double>(j, where, key, fallback);
}

int get_int(const json& j, const std::string& where, const char* key, int fallback) {
    if (j.contains(key) && !j.at(key).is_number_integer())
        throw ConfigError(where + "." + key + ": expected an integer");
    return get<int>(j, where, key, fallback);
}

std::string get_string(const json& j, const std::string& where, const char* key, std::string fallback) {
    if (j.contains(key) && !j.at(key).is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return get<std::string>(j, where, key, std::move(fallback));
}

Initial parse_initial(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "unit_filling") return UnitFilling{};
        if (s == "ness") return NessInitial{};
        throw ConfigError("evolve.initial: unknown initial state '" + s + "'");
    }
    check_keys(j, "evolve.initial", {"custom_covariance"});
    if (!j.contains("custom_covariance") || !j.at("custom_covariance").is_string())
        throw ConfigError("evolve.initial.custom_covariance: expected a path");
    return CustomCovariance{j.at("custom_covariance").get<std::string>()};
}

json initial_to_json(const Initial& init) {
    if (std::holds_alternative<UnitFilling>(init)) return "unit_filling";
    if (std::holds_alternative<NessInitial>(init)) return "ness";
    return json{{"custom_covariance", std::get<CustomCovariance>(init).path}};
}

}  // namespace

std::string to_string(Task t) {
    for (const auto& [task, name] : kTasks)
        if (task == t) return name;
    return "unknown";
}

Task parse_task(const std::string& s) {
    for (const auto& [task, name] : kTasks)
        if (name == s) return task;
    throw ConfigError("unknown task '" + s + "'");
}

void RunConfig::validate() const {
    try {
        model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(evolve.t_max > 0.0) || !std::isfinite(evolve.t_max)) throw ConfigError("evolve.t_max must be > 0");
    if (evolve.samples < 2) throw ConfigError("evolve.samples must be ≥ 2");
    if (output.dir.empty()) throw ConfigError("output.dir must not be empty");
    if (kspace) {
        if (kspace->grid < 1) throw ConfigError("kspace.grid must be ≥ 1");
        for (double k : kspace->momenta)
            if (!std::isfinite(k)) throw ConfigError("kspace.momenta must be finite");
    }
    if (scan) {
        if (scan->theta_steps < 1 || scan->phi_steps < 1) throw ConfigError("scan steps must be ≥ 1");
        if (scan->random_draws < 0) throw ConfigError("scan.random_draws must be ≥ 0");
    }
}

RunConfig parse_config(const json& j) {
    check_keys(j, "config", {"model", "task", "evolve", "output", "kspace", "scan"});
    RunConfig cfg;
    if (!j.contains("model")) throw ConfigError("config: missing 'model'");
    const json& m = j.at("model");
    check_keys(m, "model",
               {"n_cells", "t1", "t2", "gamma_l", "gamma_g", "theta", "phi", "theta_p", "phi_p", "boundary"});
    auto& p = cfg.model;
    p.n_cells = get_int(m, "model", "n_cells", p.n_cells);
    p.t1 = get_real(m, "model", "t1", p.t1);
    p.t2 = get_real(m, "model", "t2", p.t2);
    p.gamma_l = get_real(m, "model", "gamma_l", p.gamma_l);
    p.gamma_g = get_real(m, "model", "gamma_g", p.gamma_g);
    p.theta = get_real(m, "model", "theta", p.theta);
    p.phi = get_real(m, "model", "phi", p.phi);
    p.theta_p = get_real(m, "model", "theta_p", p.theta_p);
    p.phi_p = get_real(m, "model", "phi_p", p.phi_p);
    const auto bc = get_string(m, "model", "boundary", "open");
    if (bc == "open")
        cfg.boundary = Boundary::Open;
    else if (bc == "periodic")
        cfg.boundary = Boundary::Periodic;
    else
        throw ConfigError("model.boundary: expected 'open' or 'periodic'");

    if (j.contains("task")) {
        if (!j.at("task").is_string()) throw ConfigError("task: expected a string");
        cfg.task = parse_task(j.at("task").get<std::string>());
    }

    if (j.contains("evolve")) {
        const json& e = j.at("evolve");
        check_keys(e, "evolve", {"t_max", "samples", "initial", "method"});
        cfg.evolve.t_max = get_real(e, "evolve", "t_max", cfg.evolve.t_max);
        cfg.evolve.samples = get_int(e, "evolve", "samples", cfg.evolve.samples);
        if (e.contains("initial")) cfg.evolve.initial = parse_initial(e.at("initial"));
        const auto method = get_string(e, "evolve", "method", "spectral");
        if (method == "spectral")
            cfg.evolve.method = EvolveMethod::Spectral;
        else if (method == "damping")
            cfg.evolve.method = EvolveMethod::Damping;
        else
            throw ConfigError("evolve.method: expected 'spectral' or 'damping'");
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        check_keys(o, "output", {"dir", "format"});
        cfg.output.dir = get_string(o, "output", "dir", cfg.output.dir);
        const auto fmt = get_string(o, "output", "format", "csv");
        if (fmt == "csv")
            cfg.output.format = Format::Csv;
        else if (fmt == "json")
            cfg.output.format = Format::Json;
        else
            throw ConfigError("output.format: expected 'csv' or 'json'");
    }

    if (j.contains("kspace")) {
        const json& k = j.at("kspace");
        check_keys(k, "kspace", {"grid", "momenta"});
        KspaceConfig kc;
        kc.grid = get_int(k, "kspace", "grid", kc.grid);
        if (k.contains("momenta")) {
            const json& arr = k.at("momenta");
            if (!arr.is_array()) throw ConfigError("kspace.momenta: expected an array");
            for (const auto& v : arr) {
                if (!v.is_number()) throw ConfigError("kspace.momenta: expected numbers");
                kc.momenta.push_back(v.get<double>());
            }
        }
        cfg.kspace = kc;
    }

    if (j.contains("scan")) {
        const json& s = j.at("scan");
        check_keys(s, "scan", {"theta_steps", "phi_steps", "random_draws", "seed"});
        ScanConfig sc;
        sc.theta_steps = get_int(s, "scan", "theta_steps", sc.theta_steps);
        sc.phi_steps = get_int(s, "scan", "phi_steps", sc.phi_steps);
        sc.random_draws = get_int(s, "scan", "random_draws", sc.random_draws);
        if (s.contains("seed")) {
            if (!s.at("seed").is_number_unsigned()) throw ConfigError("scan.seed: expected a non-negative integer");
            sc.seed = s.at("seed").get<std::uint64_t>();
        }
        cfg.scan = sc;
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& cfg) {
    const auto& p = cfg.model;
    json j;
    j["model"] = {{"n_cells", p.n_cells}, {"t1", p.t1},           {"t2", p.t2},
                  {"gamma_l", p.gamma_l}, {"gamma_g", p.gamma_g}, {"theta", p.theta},
                  {"phi", p.phi},         {"theta_p", p.theta_p}, {"phi_p", p.phi_p},
                  {"boundary", cfg.boundary == Boundary::Open ? "open" : "periodic"}};
    j["task"] = to_string(cfg.task);
    j["evolve"] = {{"t_max", cfg.evolve.t_max},
                   {"samples", cfg.evolve.samples},
                   {"initial", initial_to_json(cfg.evolve.initial)},
                   {"method", cfg.evolve.method == EvolveMethod::Spectral ? "spectral" : "damping"}};
    j["output"] = {{"dir", cfg.output.dir}, {"format", cfg.output.format == Format::Csv ? "csv" : "json"}};
    if (cfg.kspace) {
        j["kspace"] = {{"grid", cfg.kspace->grid}};
        if (!cfg.kspace->momenta.empty()) j["kspace"]["momenta"] = cfg.kspace->momenta;
    }
    if (cfg.scan)
        j["scan"] = {{"theta_steps", cfg.scan->theta_steps},
                     {"phi_steps", cfg.scan->phi_steps},
                     {"random_draws", cfg.scan->random_draws},
                     {"seed", cfg.scan->seed}};
    return j;
}

}  // namespace skin::cli
