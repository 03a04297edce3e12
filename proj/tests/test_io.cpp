#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lvhopf/commands.hpp"
#include "lvhopf/config.hpp"
#include "lvhopf/errors.hpp"
#include "lvhopf/spectral.hpp"

using namespace lvhopf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string field;
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

// scratch directory per test case; wiped up front so reruns start clean
fs::path scratch(const std::string& name) {
    fs::path dir = fs::path("io_scratch") / name;
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("formatted doubles survive a text round trip") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 2.5e17, 3.141592653589793,
                     -1e-17, -0.0, 7.25}) {
        std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("an empty config yields the documented defaults") {
    RunConfig cfg = parse_config("");
    CHECK(cfg.model.a == 4.0);
    CHECK(cfg.model.H == 0.01);
    CHECK(cfg.kernel.family == KernelFamily::Dirac);
    CHECK(cfg.kernel.expectation == 1.0);
    CHECK(cfg.sim.method == SimMethod::Convolution);
    CHECK(cfg.scan.n_points == 26);
    CHECK(cfg.output_dir == "out");
}

TEST_CASE("serialization round-trips a fully customized config") {
    RunConfig cfg;
    cfg.model.a = 5.3;
    cfg.model.H = 0.017;
    cfg.kernel = DelayKernel::erlang(3, 0.75);
    cfg.sim.t_end = 123.5;
    cfg.sim.dt = 2e-4;
    cfg.sim.method = SimMethod::Chain;
    cfg.sim.history = HistoryKind::ConstantAtEquilibrium;
    cfg.sim.perturbation = 0.02;
    cfg.sim.truncation_epsilon = 1e-12;
    cfg.sim.transient_fraction = 0.25;
    cfg.scan.E_min = 0.1;
    cfg.scan.E_max = 1.9;
    cfg.scan.n_points = 7;
    cfg.output_dir = "some/nested dir";
    cfg.seed = -42;

    std::string text = serialize_config(cfg);
    CHECK(serialize_config(parse_config(text)) == text);
}

TEST_CASE("comments and blank lines are skipped; later keys win") {
    RunConfig cfg = parse_config("# header comment\n"
                                 "\n"
                                 "model.a = 4.5  # trailing comment\n"
                                 "model.a = 5.5\n");
    CHECK(cfg.model.a == 5.5);
}

TEST_CASE("malformed configs are rejected with ConfigError") {
    const char* bad[] = {
        "modell.a = 1",           // unknown key
        "model.a = abc",          // unparseable number
        "kernel.family = gauss",  // unknown family
        "kernel.expectation = -1",
        "kernel.shape = 0",
        "sim.method = euler",
        "sim.transient_fraction = 1.0",
        "scan.n_points = 1",
        "scan.E_min = -0.5",
        "scan.E_min = 2\nscan.E_max = 2",
        "model.a",                // no '=' at all
    };
    for (const char* text : bad)
        CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("loading a missing config file fails cleanly") {
    CHECK_THROWS_AS(load_config("io_scratch/definitely_not_here.cfg"), ConfigError);
}

TEST_CASE("scan output is a well-formed grid with exact root values") {
    RunConfig cfg;
    cfg.scan = {0.0, 0.2, 3};
    cfg.output_dir = scratch("scan").string();

    std::ostringstream report;
    CHECK(cmd_scan(cfg, report) == 0);

    auto lines = lines_of(slurp(fs::path(cfg.output_dir) / "scan.csv"));
    REQUIRE(lines.size() > 1);
    CHECK(lines[0].rfind("# model.a = ", 0) == 0); // provenance header first

    std::size_t i = 0;
    while (i < lines.size() && lines[i].rfind("#", 0) == 0) ++i;
    REQUIRE(lines[i] == "E,re_lead,im_lead,stable,note");

    LinearCoeffs c = linear_coeffs(cfg.model, compute_equilibrium(cfg.model));
    double grid[3] = {0.0, 0.1, 0.2};
    for (int row = 0; row < 3; ++row) {
        auto f = split_csv(lines[i + 1 + row]);
        REQUIRE(f.size() == 5);
        double e = std::strtod(f[0].c_str(), nullptr);
        CHECK(e == grid[row]);
        CharRoot root = rightmost_root(c, cfg.kernel.with_expectation(e));
        CHECK(std::strtod(f[1].c_str(), nullptr) == root.lambda.real());
        CHECK(std::strtod(f[2].c_str(), nullptr) == root.lambda.imag());
        CHECK(f[3] == (root.lambda.real() < 0.0 ? "true" : "false"));
    }
    CHECK(i + 4 == lines.size());
}

TEST_CASE("repeated scans produce byte-identical output") {
    RunConfig cfg;
    cfg.scan = {0.0, 1.5, 4};
    cfg.output_dir = scratch("det").string();

    std::ostringstream r1;
    REQUIRE(cmd_scan(cfg, r1) == 0);
    std::string first = slurp(fs::path(cfg.output_dir) / "scan.csv");

    std::ostringstream r2;
    REQUIRE(cmd_scan(cfg, r2) == 0);
    CHECK(slurp(fs::path(cfg.output_dir) / "scan.csv") == first);
}

TEST_CASE("analysis output lists the named quantities in order") {
    RunConfig cfg;
    cfg.output_dir = scratch("analyze").string();

    std::ostringstream report;
    REQUIRE(cmd_analyze(cfg, report) == 0);

    auto lines = lines_of(slurp(fs::path(cfg.output_dir) / "analysis.csv"));
    std::size_t i = 0;
    while (i < lines.size() && lines[i].rfind("#", 0) == 0) ++i;
    REQUIRE(lines[i] == "name,value");

    const char* expected[] = {"omega0",        "omega1",
                              "E1_lower_bound", "E_crit",
                              "omega_crit",     "transversal_slope",
                              "transversal_ok", "omega1_minus_omega0_abs",
                              "bound_respected"};
    REQUIRE(lines.size() == i + 1 + 9);
    for (int row = 0; row < 9; ++row)
        CHECK(split_csv(lines[i + 1 + row])[0] == expected[row]);

    LinearCoeffs c = linear_coeffs(cfg.model, compute_equilibrium(cfg.model));
    HopfPoint hp = critical_expectation(c, cfg.kernel.family, cfg.kernel.shape);
    auto e_crit_row = split_csv(lines[i + 4]);
    CHECK(std::strtod(e_crit_row[1].c_str(), nullptr) == hp.E_crit);
    CHECK(report.str().find("E_crit") != std::string::npos);
}

TEST_CASE("infeasible parameters exit with the dedicated code") {
    RunConfig cfg;
    cfg.model.a = 3.0;
    std::ostringstream report;
    CHECK(cmd_equilibrium(cfg, report) == 2);
    CHECK(report.str().find("infeasible") != std::string::npos);
}

TEST_CASE("zero harvest zeroes the constant coefficient") {
    RunConfig cfg;
    cfg.model.H = 0.0;
    std::ostringstream report;
    CHECK(cmd_coeffs(cfg, report) == 0);
    CHECK(report.str().find("a5 = 0") != std::string::npos);
}

TEST_CASE("a simulate run that cannot resolve the lag exits with 1") {
    RunConfig cfg;
    cfg.kernel = DelayKernel::dirac(0.2);
    cfg.sim.dt = 0.1;
    cfg.output_dir = scratch("coarse").string();
    std::ostringstream report;
    CHECK(cmd_simulate(cfg, report) == 1);
}

TEST_CASE("a blow-up still writes the partial trajectory") {
    RunConfig cfg;
    cfg.kernel = DelayKernel::dirac(2.5);
    cfg.sim.t_end = 200.0;
    cfg.sim.dt = 1e-2;
    cfg.output_dir = scratch("blowup").string();

    std::ostringstream report;
    CHECK(cmd_simulate(cfg, report) == 4);

    auto traj = lines_of(slurp(fs::path(cfg.output_dir) / "trajectory.csv"));
    std::size_t i = 0;
    while (i < traj.size() && traj[i].rfind("#", 0) == 0) ++i;
    REQUIRE(traj[i] == "t,x1,x2,x3");
    CHECK(traj.size() > i + 100); // partial data, not just a header

    std::string metrics = slurp(fs::path(cfg.output_dir) / "metrics.csv");
    CHECK(metrics.find("terminated early") != std::string::npos);
}

TEST_CASE("a healthy simulate run reports cycle metrics") {
    RunConfig cfg;
    cfg.kernel = DelayKernel::dirac(0.5);
    cfg.sim.t_end = 80.0;
    cfg.sim.dt = 1e-2;
    cfg.output_dir = scratch("sim_ok").string();

    std::ostringstream report;
    CHECK(cmd_simulate(cfg, report) == 0);

    auto metrics = lines_of(slurp(fs::path(cfg.output_dir) / "metrics.csv"));
    std::size_t i = 0;
    while (i < metrics.size() && metrics[i].rfind("#", 0) == 0) ++i;
    REQUIRE(i + 2 <= metrics.size());
    CHECK(metrics[i] ==
          "amplitude_x1,amplitude_x2,amplitude_x3,period,decaying,period_rel_err_bound");
    auto f = split_csv(metrics[i + 1]);
    REQUIRE(f.size() == 6);
    CHECK(f[4] == "true"); // E well below the crossing: perturbation decays
}
