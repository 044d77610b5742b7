// otto_cli.cpp — Command-line front end for the squeezed-bath Otto engine simulator

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otto/cli/commands.hpp"
#include "otto/errors.hpp"

namespace {

constexpr int kExitInvalidManifest = 2;
constexpr int kExitNonConvergence = 3;

struct Options {
    std::string preset;
    std::string config_path;
    std::vector<std::string> sets;
    std::string sweep;
    std::string out;
    int jobs{1};
    long long oracle{0};
    unsigned long long seed{12345};
    std::string mode;
    double eta_min{0.0}, eta_max{0.0};
    int eta_count{0};
};

otto::cli::RunManifest build_manifest(const Options& o, CLI::App& sub) {
    using namespace otto::cli;
    RunManifest m = o.preset.empty() ? default_manifest() : preset_manifest(o.preset);
    if (!o.config_path.empty()) {
        std::ifstream f(o.config_path);
        if (!f) throw ManifestError("cannot read config file '" + o.config_path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        apply_config_json(m, ss.str());
    }
    for (const std::string& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ManifestError("--set expects KEY=VALUE, got '" + kv + "'");
        m.set_text(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!o.sweep.empty()) m.sweep = parse_sweep(o.sweep);
    if (!o.mode.empty()) m.mode = parse_mode(o.mode);
    if (sub.count("--eta-min")) m.eta_min = o.eta_min;
    if (sub.count("--eta-max")) m.eta_max = o.eta_max;
    if (sub.count("--eta-count")) m.eta_count = o.eta_count;
    m.out = o.out;
    m.jobs = o.jobs;
    m.oracle_samples = o.oracle;
    m.seed = o.seed;
    m.validate();
    return m;
}

template <class F>
void with_output(const std::string& path, F&& body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw otto::cli::ManifestError("cannot open output file '" + path + "'");
    body(f);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-time quantum Otto engine with a squeezed hot bath"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--preset", o.preset, "named parameter set (default, fig2a ... fig7)");
        s->add_option("--config", o.config_path, "JSON file of parameter overrides");
        s->add_option("--set", o.sets, "override one parameter, KEY=VALUE (repeatable)");
        s->add_option("--sweep", o.sweep, "sweep axis KEY:START:STOP:COUNT[:lin|log|strobe]");
        s->add_option("--out", o.out, "output path (dist: file prefix)");
        s->add_option("--jobs", o.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
        s->add_option("--oracle", o.oracle, "Monte-Carlo samples for the work-distribution oracle");
        s->add_option("--seed", o.seed, "random seed for the oracle");
        s->add_option("--mode", o.mode, "limit-cycle | assumed-closure");
        s->add_option("--eta-min", o.eta_min, "lower end of the efficiency grid");
        s->add_option("--eta-max", o.eta_max, "upper end of the efficiency grid");
        s->add_option("--eta-count", o.eta_count, "points in the efficiency grid");
    };
    CLI::App* cycle = app.add_subcommand("cycle", "solve one cycle and print a JSON report");
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep as CSV");
    CLI::App* dist = app.add_subcommand("dist", "write work, heat and joint distributions as CSV");
    CLI::App* ldf = app.add_subcommand("ldf", "large-deviation function of the efficiency as CSV");
    CLI::App* selftest = app.add_subcommand("selftest", "numerical self-checks");
    for (CLI::App* s : {cycle, sweep, dist, ldf, selftest}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidManifest;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        const otto::cli::RunManifest m = build_manifest(o, *sub);
        if (sub == cycle) {
            with_output(m.out, [&](std::ostream& os) { otto::cli::run_cycle_command(m, os); });
        } else if (sub == sweep) {
            with_output(m.out, [&](std::ostream& os) { otto::cli::run_sweep_command(m, os); });
        } else if (sub == dist) {
            otto::cli::run_dist_command(m, otto::cli::dist_file_names(m.out));
        } else if (sub == ldf) {
            with_output(m.out, [&](std::ostream& os) { otto::cli::run_ldf_command(m, os, std::cerr); });
        } else {
            bool ok = false;
            with_output(m.out, [&](std::ostream& os) { ok = otto::cli::run_selftest(m, os); });
            return ok ? 0 : kExitNonConvergence;
        }
    } catch (const otto::cli::ManifestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidManifest;
    } catch (const otto::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
