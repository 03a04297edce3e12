#pragma once

#include <string>

#include "lvhopf/kernels.hpp"
#include "lvhopf/model.hpp"
#include "lvhopf/simulate.hpp"

namespace lvhopf {

struct ScanConfig {
    double E_min = 0.0;
    double E_max = 2.5;
    int n_points = 26;
};

/// Full run configuration. Serialized as flat `key = value` lines with
/// dotted key paths; parse(serialize(cfg)) reproduces cfg exactly.
struct RunConfig {
    ModelParams model;
    DelayKernel kernel{KernelFamily::Dirac, 1.0, 1};
    SimConfig sim;
    ScanConfig scan;
    std::string output_dir = "out";
    long seed = 0;
};

/// Parse `key = value` text; '#' starts a comment, blank lines are
/// ignored, unknown keys or malformed values throw ConfigError.
RunConfig parse_config(const std::string& text);

/// Read and parse a config file; missing file throws ConfigError.
RunConfig load_config(const std::string& path);

/// Canonical text form, one key per line, reals at full precision.
std::string serialize_config(const RunConfig& cfg);

/// Shortest decimal that round-trips the double (17 significant digits).
std::string format_double(double v);

std::string to_string(KernelFamily f);
std::string to_string(SimMethod m);
std::string to_string(HistoryKind h);

} // namespace lvhopf
