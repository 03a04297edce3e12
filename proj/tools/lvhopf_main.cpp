// Command-line front end: subcommands map 1:1 onto the cmd_* entry points.
// Flag overrides are applied by appending to the config text, so every
// value passes through the same parser and validation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "lvhopf/commands.hpp"
#include "lvhopf/config.hpp"
#include "lvhopf/errors.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lvhopf::ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Stability and bifurcation analysis of a harvested one-predator, "
        "two-prey system with distributed delay"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<double> a_override, h_override, e_override;
    std::optional<std::string> kernel_override;
    std::optional<int> shape_override;
    app.add_option("--config", config_path, "run configuration file (key = value lines)");
    app.add_option("--a", a_override, "override model.a");
    app.add_option("--H", h_override, "override model.H");
    app.add_option("--kernel", kernel_override,
                   "override kernel.family (dirac|erlang|uniform)");
    app.add_option("--E", e_override, "override kernel.expectation");
    app.add_option("--shape", shape_override, "override kernel.shape");

    app.add_subcommand("equilibrium", "interior equilibrium and feasibility");
    app.add_subcommand("coeffs", "characteristic coefficients a1..a5");
    app.add_subcommand("stability", "delay-free stability margins");
    app.add_subcommand("analyze", "crossing frequencies and critical expectation");
    app.add_subcommand("scan", "rightmost root over an expectation grid");
    app.add_subcommand("simulate", "time integration and cycle metrics");
    app.add_subcommand("validate", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::string text = config_path.empty() ? std::string() : slurp(config_path);
        std::ostringstream extra;
        if (a_override) extra << "\nmodel.a = " << lvhopf::format_double(*a_override);
        if (h_override) extra << "\nmodel.H = " << lvhopf::format_double(*h_override);
        if (kernel_override) extra << "\nkernel.family = " << *kernel_override;
        if (e_override)
            extra << "\nkernel.expectation = " << lvhopf::format_double(*e_override);
        if (shape_override) extra << "\nkernel.shape = " << *shape_override;
        lvhopf::RunConfig cfg = lvhopf::parse_config(text + extra.str());

        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "equilibrium") return lvhopf::cmd_equilibrium(cfg, std::cout);
        if (name == "coeffs") return lvhopf::cmd_coeffs(cfg, std::cout);
        if (name == "stability") return lvhopf::cmd_stability(cfg, std::cout);
        if (name == "analyze") return lvhopf::cmd_analyze(cfg, std::cout);
        if (name == "scan") return lvhopf::cmd_scan(cfg, std::cout);
        if (name == "simulate") return lvhopf::cmd_simulate(cfg, std::cout);
        return lvhopf::cmd_validate(cfg, std::cout);
    } catch (const lvhopf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
