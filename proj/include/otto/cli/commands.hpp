// commands.hpp — Subcommands of the command-line tool

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "otto/cli/manifest.hpp"
#include "otto/statistics.hpp"

namespace otto::cli {

// Shortest round-trip decimal form; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double v);

struct SweepRow {
    std::string series;
    double value{0.0};
    CycleReport report;
};

std::vector<std::string> sweep_header(const RunManifest& m);
std::vector<SweepRow> evaluate_sweep(const RunManifest& m);
void write_sweep_csv(std::ostream& os, const RunManifest& m, const std::vector<SweepRow>& rows);

void run_cycle_command(const RunManifest& m, std::ostream& os);
void run_sweep_command(const RunManifest& m, std::ostream& os);

struct DistFiles {
    std::string work, heat, joint, oracle;
};
DistFiles dist_file_names(const std::string& prefix);
// Writes work, heat and joint tables (and the oracle table when samples > 0).
void run_dist_command(const RunManifest& m, const DistFiles& files);
void run_ldf_command(const RunManifest& m, std::ostream& os, std::ostream& log);

// Returns true when every check passes.
bool run_selftest(const RunManifest& m, std::ostream& os);

} // namespace otto::cli
