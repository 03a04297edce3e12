#pragma once

#include <ostream>

#include "lvhopf/config.hpp"

namespace lvhopf {

// Subcommand entry points. Each writes a human-readable report to `os`
// (and its CSV outputs under config.output_dir where applicable) and
// returns the process exit code: 0 success, 1 config error, 2 infeasible
// model, 3 no crossing found, 4 simulation blow-up.

/// Interior equilibrium and feasibility margins.
int cmd_equilibrium(const RunConfig& cfg, std::ostream& os);

/// Characteristic-equation coefficients a1..a5 at the equilibrium.
int cmd_coeffs(const RunConfig& cfg, std::ostream& os);

/// Delay-free stability verdict with the Routh-Hurwitz margins.
int cmd_stability(const RunConfig& cfg, std::ostream& os);

/// Crossing analysis: omega0, omega1, expectation lower bound, critical
/// expectation, crossing frequency and speed. Writes analysis.csv.
int cmd_analyze(const RunConfig& cfg, std::ostream& os);

/// Rightmost characteristic root over the expectation grid. Writes
/// scan.csv; per-point failures become note rows, not a failed run.
int cmd_scan(const RunConfig& cfg, std::ostream& os);

/// Time integration at the configured kernel. Writes trajectory.csv and
/// metrics.csv; a blow-up still writes the partial trajectory.
int cmd_simulate(const RunConfig& cfg, std::ostream& os);

/// Full acceptance suite; one line per criterion. Exit 0 iff all pass,
/// 2 when the suite was skipped for an infeasible model.
int cmd_validate(const RunConfig& cfg, std::ostream& os);

} // namespace lvhopf
