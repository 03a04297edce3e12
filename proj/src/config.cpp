#include "lvhopf/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lvhopf/errors.hpp"

namespace lvhopf {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
    const char* begin = v.c_str();
    char* end = nullptr;
    double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    return x;
}

long parse_int(const std::string& key, const std::string& v) {
    const char* begin = v.c_str();
    char* end = nullptr;
    long x = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return x;
}

KernelFamily parse_family(const std::string& v) {
    if (v == "dirac") return KernelFamily::Dirac;
    if (v == "erlang") return KernelFamily::Erlang;
    if (v == "uniform") return KernelFamily::Uniform;
    throw ConfigError("kernel.family: expected dirac|erlang|uniform, got '" + v + "'");
}

} // namespace

std::string to_string(KernelFamily f) {
    switch (f) {
    case KernelFamily::Dirac: return "dirac";
    case KernelFamily::Erlang: return "erlang";
    case KernelFamily::Uniform: return "uniform";
    }
    return "dirac";
}

std::string to_string(SimMethod m) {
    return m == SimMethod::Chain ? "chain" : "convolution";
}

std::string to_string(HistoryKind h) {
    return h == HistoryKind::Perturbed ? "perturbed" : "equilibrium";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));

        if (key == "model.a") cfg.model.a = parse_real(key, val);
        else if (key == "model.H") cfg.model.H = parse_real(key, val);
        else if (key == "kernel.family") cfg.kernel.family = parse_family(val);
        else if (key == "kernel.expectation") {
            cfg.kernel.expectation = parse_real(key, val);
            if (cfg.kernel.expectation < 0.0)
                throw ConfigError("kernel.expectation must be >= 0");
        } else if (key == "kernel.shape") {
            long k = parse_int(key, val);
            if (k < 1) throw ConfigError("kernel.shape must be a positive integer");
            cfg.kernel.shape = int(k);
        } else if (key == "sim.t_end") cfg.sim.t_end = parse_real(key, val);
        else if (key == "sim.dt") cfg.sim.dt = parse_real(key, val);
        else if (key == "sim.method") {
            if (val == "chain") cfg.sim.method = SimMethod::Chain;
            else if (val == "convolution") cfg.sim.method = SimMethod::Convolution;
            else throw ConfigError("sim.method: expected chain|convolution");
        } else if (key == "sim.history") {
            if (val == "equilibrium") cfg.sim.history = HistoryKind::ConstantAtEquilibrium;
            else if (val == "perturbed") cfg.sim.history = HistoryKind::Perturbed;
            else throw ConfigError("sim.history: expected equilibrium|perturbed");
        } else if (key == "sim.perturbation") cfg.sim.perturbation = parse_real(key, val);
        else if (key == "sim.truncation_epsilon")
            cfg.sim.truncation_epsilon = parse_real(key, val);
        else if (key == "sim.transient_fraction") {
            cfg.sim.transient_fraction = parse_real(key, val);
            if (cfg.sim.transient_fraction <= 0.0 || cfg.sim.transient_fraction >= 1.0)
                throw ConfigError("sim.transient_fraction must lie in (0, 1)");
        } else if (key == "scan.E_min") cfg.scan.E_min = parse_real(key, val);
        else if (key == "scan.E_max") cfg.scan.E_max = parse_real(key, val);
        else if (key == "scan.n_points") {
            long n = parse_int(key, val);
            if (n < 2) throw ConfigError("scan.n_points must be at least 2");
            cfg.scan.n_points = int(n);
        } else if (key == "output.dir") cfg.output_dir = val;
        else if (key == "seed") cfg.seed = parse_int(key, val);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    if (cfg.scan.E_min < 0.0) throw ConfigError("scan.E_min must be >= 0");
    if (cfg.scan.E_max <= cfg.scan.E_min)
        throw ConfigError("scan.E_max must exceed scan.E_min");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "model.a = " << format_double(cfg.model.a) << "\n";
    os << "model.H = " << format_double(cfg.model.H) << "\n";
    os << "kernel.family = " << to_string(cfg.kernel.family) << "\n";
    os << "kernel.expectation = " << format_double(cfg.kernel.expectation) << "\n";
    os << "kernel.shape = " << cfg.kernel.shape << "\n";
    os << "sim.t_end = " << format_double(cfg.sim.t_end) << "\n";
    os << "sim.dt = " << format_double(cfg.sim.dt) << "\n";
    os << "sim.method = " << to_string(cfg.sim.method) << "\n";
    os << "sim.history = " << to_string(cfg.sim.history) << "\n";
    os << "sim.perturbation = " << format_double(cfg.sim.perturbation) << "\n";
    os << "sim.truncation_epsilon = " << format_double(cfg.sim.truncation_epsilon)
       << "\n";
    os << "sim.transient_fraction = " << format_double(cfg.sim.transient_fraction)
       << "\n";
    os << "scan.E_min = " << format_double(cfg.scan.E_min) << "\n";
    os << "scan.E_max = " << format_double(cfg.scan.E_max) << "\n";
    os << "scan.n_points = " << cfg.scan.n_points << "\n";
    os << "output.dir = " << cfg.output_dir << "\n";
    os << "seed = " << cfg.seed << "\n";
    return os.str();
}

} // namespace lvhopf
