// manifest.cpp — Run configuration for the command-line tool: keys with units, presets, sweeps

#include "otto/cli/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace otto::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<std::string, double>> default_params() {
    return {
        {"omega_c_pi_khz", 4.0},
        {"omega_h_pi_khz", 7.2},
        {"beta_c_hbar_omega_c", 2.0},
        {"beta_h_hbar_omega_h", 0.5},
        {"r", 0.0},
        {"theta_rad", 0.0},
        {"gamma_c_hz", 1.0},
        {"gamma_h_hz", 1.0},
        {"tau_dri_us", 460.0},
        {"tau_h_ms", 75.15},
        {"tau_c_s", 5.0},
        {"dephase_after_hot", 0.0},
        {"drive_steps", 2000.0},
        {"limit_cycle_tol", 1e-12},
        {"limit_cycle_max_iter", 10000.0},
    };
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ManifestError("invalid numeric value '" + text + "' for " + key);
    return v;
}

std::string format_label(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Series series_r(double r) { return Series{"r=" + format_label(r), {{"r", r}}}; }

std::vector<Series> r_series(std::initializer_list<double> rs) {
    std::vector<Series> out;
    for (double r : rs) out.push_back(series_r(r));
    return out;
}

} // namespace

const std::vector<std::string>& parameter_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, v] : default_params()) k.push_back(name);
        return k;
    }();
    return keys;
}

bool is_parameter_key(const std::string& key) {
    const auto& k = parameter_keys();
    return std::find(k.begin(), k.end(), key) != k.end();
}

double RunManifest::get(const std::string& key) const {
    for (const auto& [k, v] : params)
        if (k == key) return v;
    throw ManifestError("unknown parameter key '" + key + "'");
}

void RunManifest::set(const std::string& key, double value) {
    if (!is_parameter_key(key)) throw ManifestError("unknown parameter key '" + key + "'");
    if (!std::isfinite(value)) throw ManifestError("non-finite value for " + key);
    for (auto& [k, v] : params)
        if (k == key) {
            v = value;
            return;
        }
    params.emplace_back(key, value);
}

void RunManifest::set_text(const std::string& key, const std::string& value) {
    if (key == "dephase_after_hot" && (value == "true" || value == "false")) {
        set(key, value == "true" ? 1.0 : 0.0);
        return;
    }
    set(key, parse_double(key, value));
}

CycleConfig RunManifest::config() const { return config(Series{}, std::nullopt); }

CycleConfig RunManifest::config(const Series& s, std::optional<double> sweep_value) const {
    RunManifest m = *this;
    for (const auto& [k, v] : s.overrides) m.set(k, v);
    if (sweep_value) m.set(sweep->key, *sweep_value);

    CycleConfig c;
    c.omega_c = m.get("omega_c_pi_khz") * kPi * 1e3;
    c.omega_h = m.get("omega_h_pi_khz") * kPi * 1e3;
    c.beta_c = m.get("beta_c_hbar_omega_c") / c.omega_c;
    c.beta_h = m.get("beta_h_hbar_omega_h") / c.omega_h;
    c.r = m.get("r");
    c.theta = m.get("theta_rad");
    c.gamma_c = m.get("gamma_c_hz");
    c.gamma_h = m.get("gamma_h_hz");
    c.tau_dri = m.get("tau_dri_us") * 1e-6;
    c.tau_h = m.get("tau_h_ms") * 1e-3;
    c.tau_c = m.get("tau_c_s");
    c.dephase_after_hot = m.get("dephase_after_hot") != 0.0;
    const double steps = m.get("drive_steps");
    const double iters = m.get("limit_cycle_max_iter");
    if (steps != std::floor(steps) || steps < 1 || steps > 1e8) throw ManifestError("drive_steps must be a positive integer");
    if (iters != std::floor(iters) || iters < 1 || iters > 1e8)
        throw ManifestError("limit_cycle_max_iter must be a positive integer");
    c.drive_steps = static_cast<int>(steps);
    c.max_iterations = static_cast<int>(iters);
    c.tolerance = m.get("limit_cycle_tol");
    c.mode = mode;
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ManifestError(e.what());
    }
    return c;
}

std::vector<double> RunManifest::sweep_values() const {
    if (!sweep) return {};
    const SweepAxis& a = *sweep;
    std::vector<double> v;
    for (int i = 0; i < a.count; ++i) {
        const double f = a.count == 1 ? 0.0 : static_cast<double>(i) / (a.count - 1);
        if (a.scale == AxisScale::log)
            v.push_back(a.start * std::pow(a.stop / a.start, f));
        else
            v.push_back(a.start + (a.stop - a.start) * f);
    }
    if (a.scale == AxisScale::stroboscopic) {
        // multiples of the hot-contact oscillation period 2 pi / omega_h, in ms
        const double period_ms = 2.0 / (get("omega_h_pi_khz") * 1e3) * 1e3;
        for (double& x : v) x = std::max(1.0, std::round(x / period_ms)) * period_ms;
    }
    return v;
}

std::vector<double> RunManifest::eta_grid() const {
    std::vector<double> g;
    for (int i = 0; i < eta_count; ++i)
        g.push_back(eta_count == 1 ? eta_min : eta_min + (eta_max - eta_min) * i / (eta_count - 1));
    return g;
}

void RunManifest::validate() const {
    if (sweep) {
        const SweepAxis& a = *sweep;
        if (!is_parameter_key(a.key)) throw ManifestError("sweep axis '" + a.key + "' is not a parameter");
        if (a.count < 1) throw ManifestError("sweep count must be >= 1");
        if (a.scale == AxisScale::log && !(a.start > 0 && a.stop > 0))
            throw ManifestError("log sweep needs positive bounds");
        if (a.scale == AxisScale::stroboscopic && a.key != "tau_h_ms")
            throw ManifestError("stroboscopic sweep applies to tau_h_ms only");
    }
    if (eta_count < 1 || !(eta_max >= eta_min)) throw ManifestError("bad eta grid");
    if (jobs < 1) throw ManifestError("jobs must be >= 1");
    if (oracle_samples < 0) throw ManifestError("oracle sample count must be >= 0");
    for (const Series& s : series)
        for (const auto& [k, v] : s.overrides)
            if (!is_parameter_key(k)) throw ManifestError("series override '" + k + "' is not a parameter");
    // resolving every grid point surfaces invalid physical parameters up front
    const std::vector<Series> ss = series.empty() ? std::vector<Series>{Series{}} : series;
    const auto values = sweep_values();
    for (const Series& s : ss) {
        if (values.empty()) {
            config(s, std::nullopt);
        } else {
            for (double v : values) config(s, v);
        }
    }
}

RunManifest default_manifest() {
    RunManifest m;
    m.params = default_params();
    return m;
}

std::vector<std::string> preset_names() {
    return {"default", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c",
            "fig5a",   "fig5b", "fig5c", "fig6a", "fig6b", "fig7"};
}

RunManifest preset_manifest(const std::string& name) {
    RunManifest m = default_manifest();
    m.preset = name;
    const SweepAxis drive_axis{"tau_dri_us", 10.0, 1000.0, 100, AxisScale::linear};
    const SweepAxis contact_axis{"tau_h_ms", 5.0, 1000.0, 200, AxisScale::linear};
    if (name == "default") return m;
    if (name == "fig2a") { // coherence at t3 against driving time
        m.set("tau_h_ms", 75.15);
        m.sweep = drive_axis;
        m.series = r_series({0.0, 0.5, 1.0});
    } else if (name == "fig2b") { // coherence at t2, t3 against squeezing
        m.set("tau_h_ms", 75.15);
        m.set("tau_dri_us", 200.0);
        m.sweep = SweepAxis{"r", 0.0, 2.0, 21, AxisScale::linear};
    } else if (name == "fig3a") { // relative entropy at t2 against driving time
        m.set("tau_h_ms", 75.15);
        m.sweep = drive_axis;
        m.series = r_series({0.0, 1.0, 2.0});
    } else if (name == "fig3b") { // relative entropy at t2 against contact time
        m.set("tau_dri_us", 200.0);
        m.sweep = contact_axis;
        m.series = r_series({0.0, 1.0, 2.0});
    } else if (name == "fig4a" || name == "fig5a") { // power / efficiency against driving time
        m.set("tau_h_ms", 75.15);
        m.sweep = drive_axis;
        m.series = r_series({0.0, 1.0, 2.0});
    } else if (name == "fig4b" || name == "fig5b") { // power / efficiency against squeezing
        m.set("tau_h_ms", 75.15);
        m.set("tau_dri_us", 460.0);
        m.sweep = SweepAxis{"r", 0.0, 2.0, 41, AxisScale::linear};
    } else if (name == "fig4c" || name == "fig5c") { // against contact time, with dephased variants
        m.set("tau_dri_us", 460.0);
        m.sweep = contact_axis;
        for (double r : {0.0, 1.0, 2.0}) {
            m.series.push_back(series_r(r));
            m.series.push_back(Series{"r=" + format_label(r) + " deph", {{"r", r}, {"dephase_after_hot", 1.0}}});
        }
    } else if (name == "fig6a") { // relative power fluctuation against contact time
        m.set("tau_dri_us", 460.0);
        m.sweep = SweepAxis{"tau_h_ms", 10.0, 250.0, 49, AxisScale::stroboscopic};
        m.series = r_series({0.0, 1.0, 2.0});
    } else if (name == "fig6b") { // relative power fluctuation against driving time
        m.set("tau_h_ms", 75.15);
        m.sweep = drive_axis;
        m.series = r_series({0.0, 1.0, 2.0});
    } else if (name == "fig7") { // efficiency large deviations
        m.set("tau_dri_us", 460.0);
        m.set("tau_h_ms", 2800.0);
        m.series = r_series({0.0, 1.0});
        m.eta_min = -1.0;
        m.eta_max = 2.0;
        m.eta_count = 401;
    } else {
        throw ManifestError("unknown preset '" + name + "'");
    }
    return m;
}

SweepAxis parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 4 || parts.size() > 5) throw ManifestError("sweep must be KEY:START:STOP:COUNT[:lin|log|strobe]");
    SweepAxis a;
    a.key = parts[0];
    a.start = parse_double("sweep start", parts[1]);
    a.stop = parse_double("sweep stop", parts[2]);
    const double count = parse_double("sweep count", parts[3]);
    if (count != std::floor(count) || count < 1 || count > 1e7) throw ManifestError("sweep count must be a positive integer");
    a.count = static_cast<int>(count);
    if (parts.size() == 5) {
        if (parts[4] == "lin")
            a.scale = AxisScale::linear;
        else if (parts[4] == "log")
            a.scale = AxisScale::log;
        else if (parts[4] == "strobe")
            a.scale = AxisScale::stroboscopic;
        else
            throw ManifestError("unknown sweep scale '" + parts[4] + "'");
    }
    return a;
}

ClosureMode parse_mode(const std::string& text) {
    if (text == "limit-cycle") return ClosureMode::limit_cycle;
    if (text == "assumed-closure") return ClosureMode::assumed_closure;
    throw ManifestError("mode must be limit-cycle or assumed-closure");
}

std::string mode_name(ClosureMode m) { return m == ClosureMode::limit_cycle ? "limit-cycle" : "assumed-closure"; }

void apply_config_json(RunManifest& m, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ManifestError("config must be a JSON object");
    auto number = [](const nlohmann::json& v, const std::string& key) {
        if (v.is_boolean()) return v.get<bool>() ? 1.0 : 0.0;
        if (!v.is_number()) throw ManifestError("config value for " + key + " must be a number");
        return v.get<double>();
    };
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& key = it.key();
            const auto& v = it.value();
            if (is_parameter_key(key)) {
                m.set(key, number(v, key));
            } else if (key == "mode") {
                m.mode = parse_mode(v.get<std::string>());
            } else if (key == "sweep") {
                if (v.is_string()) {
                    m.sweep = parse_sweep(v.get<std::string>());
                } else {
                    SweepAxis a;
                    a.key = v.at("key").get<std::string>();
                    a.start = v.at("start").get<double>();
                    a.stop = v.at("stop").get<double>();
                    a.count = v.at("count").get<int>();
                    const std::string scale = v.value("scale", std::string("lin"));
                    a.scale = scale == "log" ? AxisScale::log : scale == "strobe" ? AxisScale::stroboscopic : AxisScale::linear;
                    if (scale != "lin" && scale != "log" && scale != "strobe") throw ManifestError("unknown sweep scale");
                    m.sweep = a;
                }
            } else if (key == "series") {
                m.series.clear();
                for (const auto& s : v) {
                    Series ser;
                    ser.label = s.at("label").get<std::string>();
                    for (auto o = s.at("set").begin(); o != s.at("set").end(); ++o)
                        ser.overrides.emplace_back(o.key(), number(o.value(), o.key()));
                    m.series.push_back(ser);
                }
            } else if (key == "eta_min") {
                m.eta_min = number(v, key);
            } else if (key == "eta_max") {
                m.eta_max = number(v, key);
            } else if (key == "eta_count") {
                m.eta_count = v.get<int>();
            } else if (key == "seed") {
                m.seed = v.get<std::uint64_t>();
            } else {
                throw ManifestError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError(std::string("bad config entry: ") + e.what());
    }
}

} // namespace otto::cli
