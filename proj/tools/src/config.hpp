#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "skin/model.hpp"

namespace skin::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Task { Spectrum, Ness, Modes, Evolve, Kspace, SkinScan, OracleCheck };

std::string to_string(Task t);
Task parse_task(const std::string& s);

struct UnitFilling {
    friend bool operator==(const UnitFilling&, const UnitFilling&) = default;
};
struct NessInitial {
    friend bool operator==(const NessInitial&, const NessInitial&) = default;
};
// Majorana covariance ⟨w_m w_n⟩ stored as {"re": [[...]], "im": [[...]]}.
struct CustomCovariance {
    std::string path;
    friend bool operator==(const CustomCovariance&, const CustomCovariance&) = default;
};
using Initial = std::variant<UnitFilling, NessInitial, CustomCovariance>;

enum class EvolveMethod { Spectral, Damping };

struct EvolveConfig {
    double t_max = 20.0;
    int samples = 401;
    Initial initial = UnitFilling{};
    EvolveMethod method = EvolveMethod::Spectral;
    friend bool operator==(const EvolveConfig&, const EvolveConfig&) = default;
};

enum class Format { Csv, Json };

struct OutputConfig {
    std::string dir = "out";
    Format format = Format::Csv;
    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct KspaceConfig {
    int grid = 100;                // evenly spaced momenta on [0, 2π)
    std::vector<double> momenta;   // overrides grid when non-empty
    friend bool operator==(const KspaceConfig&, const KspaceConfig&) = default;
};

struct ScanConfig {
    int theta_steps = 13;
    int phi_steps = 13;
    int random_draws = 0;
    std::uint64_t seed = 1;
    friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

struct RunConfig {
    SshParams model;
    Boundary boundary = Boundary::Open;
    Task task = Task::Spectrum;
    EvolveConfig evolve;
    OutputConfig output;
    std::optional<KspaceConfig> kspace;
    std::optional<ScanConfig> scan;

    void validate() const;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace skin::cli
