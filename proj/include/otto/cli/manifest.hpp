// manifest.hpp — Run configuration for the command-line tool: keys with units, presets, sweeps

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "otto/cycle.hpp"

namespace otto::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AxisScale { linear, log, stroboscopic };

struct SweepAxis {
    std::string key;
    double start{0.0};
    double stop{0.0};
    int count{1};
    AxisScale scale{AxisScale::linear};
};

struct Series {
    std::string label;
    std::vector<std::pair<std::string, double>> overrides;
};

// Parameter values live in the user-facing units named by their keys
// (omega_c_pi_khz, tau_h_ms, ...) and are converted when a CycleConfig is built.
struct RunManifest {
    std::string preset{"default"};
    std::vector<std::pair<std::string, double>> params;
    ClosureMode mode{ClosureMode::limit_cycle};
    std::optional<SweepAxis> sweep;
    std::vector<Series> series;
    double eta_min{-1.0}, eta_max{2.0};
    int eta_count{401};
    std::string out;
    std::uint64_t seed{12345};
    std::int64_t oracle_samples{0};
    int jobs{1};
    std::string tool_version{kToolVersion};

    double get(const std::string& key) const;
    void set(const std::string& key, double value);
    // Parses numbers and booleans; throws ManifestError for unknown keys or bad values.
    void set_text(const std::string& key, const std::string& value);

    CycleConfig config() const;
    CycleConfig config(const Series& s, std::optional<double> sweep_value) const;
    std::vector<double> sweep_values() const;
    std::vector<double> eta_grid() const;
    void validate() const;
};

// Every numeric key, in canonical order.
const std::vector<std::string>& parameter_keys();
bool is_parameter_key(const std::string& key);

RunManifest default_manifest();
RunManifest preset_manifest(const std::string& name);
std::vector<std::string> preset_names();

// Applies a JSON object of overrides (parameter keys, mode, sweep, series, eta grid, seed).
void apply_config_json(RunManifest& m, const std::string& json_text);

SweepAxis parse_sweep(const std::string& text);
ClosureMode parse_mode(const std::string& text);
std::string mode_name(ClosureMode m);

} // namespace otto::cli
