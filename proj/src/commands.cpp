#include "lvhopf/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lvhopf/crosscheck.hpp"
#include "lvhopf/errors.hpp"
#include "lvhopf/simulate.hpp"
#include "lvhopf/spectral.hpp"
#include "lvhopf/validate.hpp"

namespace lvhopf {

namespace {

std::string fmt(double v) { return format_double(v); }

const char* yesno(bool b) { return b ? "true" : "false"; }

void config_header(std::ostream& os, const RunConfig& cfg) {
    std::istringstream in(serialize_config(cfg));
    std::string line;
    while (std::getline(in, line)) os << "# " << line << "\n";
}

// binary mode keeps line endings byte-stable across platforms
std::ofstream open_output(const RunConfig& cfg, const char* name) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    fs::path path = fs::path(cfg.output_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

// commas would break the single-token note field
std::string csv_note(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

void print_margins(std::ostream& os, const std::vector<Margin>& margins) {
    for (const Margin& m : margins)
        os << "  " << m.name << " = " << fmt(m.value) << "\n";
}

int report_infeasible(const RunConfig& cfg, const FeasibilityReport& feas,
                      std::ostream& os) {
    os << "model a = " << fmt(cfg.model.a) << ", H = " << fmt(cfg.model.H)
       << ": infeasible\n";
    if (!feas.a_ok)
        os << "  a <= 2 + sqrt(2); no positive interior equilibrium exists\n";
    else
        os << "  equilibrium not strictly positive (harvest threshold H < "
           << fmt(feas.h_threshold) << ")\n";
    print_margins(os, feas.margins);
    return 2;
}

} // namespace

int cmd_equilibrium(const RunConfig& cfg, std::ostream& os) {
    FeasibilityReport feas = check_feasibility(cfg.model);
    if (!feas.feasible) return report_infeasible(cfg, feas, os);
    Equilibrium eq = compute_equilibrium(cfg.model);
    os << "model a = " << fmt(cfg.model.a) << ", H = " << fmt(cfg.model.H)
       << ": feasible\n";
    os << "interior equilibrium\n";
    os << "  x1* = " << fmt(eq.x1) << "\n";
    os << "  x2* = " << fmt(eq.x2) << "\n";
    os << "  x3* = " << fmt(eq.x3) << "\n";
    os << "harvest threshold at this a: H < " << fmt(feas.h_threshold) << "\n";
    os << "[machine]\n";
    os << "x1_star = " << fmt(eq.x1) << "\n";
    os << "x2_star = " << fmt(eq.x2) << "\n";
    os << "x3_star = " << fmt(eq.x3) << "\n";
    os << "h_threshold = " << fmt(feas.h_threshold) << "\n";
    return 0;
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& os) {
    FeasibilityReport feas = check_feasibility(cfg.model);
    if (!feas.feasible) return report_infeasible(cfg, feas, os);
    Equilibrium eq = compute_equilibrium(cfg.model);
    LinearCoeffs c = linear_coeffs(cfg.model, eq);
    os << "characteristic coefficients at the interior equilibrium\n";
    os << "  a1 = " << fmt(c.a1) << "\n";
    os << "  a2 = " << fmt(c.a2) << "\n";
    os << "  a3 = " << fmt(c.a3) << "\n";
    os << "  a4 = " << fmt(c.a4) << "\n";
    os << "  a5 = " << fmt(c.a5) << "\n";
    os << "[machine]\n";
    os << "a1 = " << fmt(c.a1) << "\n";
    os << "a2 = " << fmt(c.a2) << "\n";
    os << "a3 = " << fmt(c.a3) << "\n";
    os << "a4 = " << fmt(c.a4) << "\n";
    os << "a5 = " << fmt(c.a5) << "\n";
    return 0;
}

int cmd_stability(const RunConfig& cfg, std::ostream& os) {
    FeasibilityReport feas = check_feasibility(cfg.model);
    if (!feas.feasible) return report_infeasible(cfg, feas, os);
    Equilibrium eq = compute_equilibrium(cfg.model);
    LinearCoeffs c = linear_coeffs(cfg.model, eq);
    RouthHurwitzResult rh = routh_hurwitz(c);
    os << "delay-free stability (cubic coefficient test)\n";
    os << "  verdict: " << (rh.ok ? "stable" : "unstable") << " at E = 0\n";
    os << "  margins (each must be positive):\n";
    print_margins(os, rh.margins);
    os << "[machine]\n";
    os << "stable_at_zero = " << yesno(rh.ok) << "\n";
    for (const Margin& m : rh.margins)
        os << "margin." << m.name << " = " << fmt(m.value) << "\n";
    return 0;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& os) {
    FeasibilityReport feas = check_feasibility(cfg.model);
    if (!feas.feasible) return report_infeasible(cfg, feas, os);
    Equilibrium eq = compute_equilibrium(cfg.model);
    LinearCoeffs c = linear_coeffs(cfg.model, eq);
    if (!routh_hurwitz(c).ok) {
        os << "equilibrium is already unstable at E = 0; no crossing in E "
              "to analyze\n";
        return 2;
    }
    ProofCurves curves = proof_curves(c, cfg.kernel);
    HopfPoint hp;
    try {
        hp = critical_expectation(c, cfg.kernel.family, cfg.kernel.shape);
    } catch (const NoCrossingFound& e) {
        os << "no stability crossing found below E = " << fmt(e.scan_ceiling)
           << ": " << e.what() << "\n";
        return 3;
    }
    bool bound_ok = hp.E_crit >= curves.E1_bound * (1.0 - 1e-12);

    os << "crossing analysis, " << to_string(cfg.kernel.family) << " kernel";
    if (cfg.kernel.family == KernelFamily::Erlang)
        os << " (shape " << cfg.kernel.shape << ")";
    os << "\n";
    os << "  omega0 (crossing frequency cap)   = " << fmt(curves.omega0) << "\n";
    os << "  omega1 (smallest F = G frequency) = " << fmt(curves.omega1) << "\n";
    os << "  expectation lower bound           = " << fmt(curves.E1_bound) << "\n";
    os << "  critical expectation E_crit       = " << fmt(hp.E_crit) << "\n";
    os << "  crossing frequency omega_crit     = " << fmt(hp.omega_crit) << "\n";
    os << "  crossing speed d Re(lambda)/dE    = " << fmt(hp.transversal_slope)
       << "\n";
    os << "  transversality nonzero            = " << yesno(hp.transversal_ok)
       << "\n";
    os << "  E_crit respects the lower bound   = " << yesno(bound_ok) << "\n";

    std::ofstream csv = open_output(cfg, "analysis.csv");
    config_header(csv, cfg);
    csv << "name,value\n";
    csv << "omega0," << fmt(curves.omega0) << "\n";
    csv << "omega1," << fmt(curves.omega1) << "\n";
    csv << "E1_lower_bound," << fmt(curves.E1_bound) << "\n";
    csv << "E_crit," << fmt(hp.E_crit) << "\n";
    csv << "omega_crit," << fmt(hp.omega_crit) << "\n";
    csv << "transversal_slope," << fmt(hp.transversal_slope) << "\n";
    csv << "transversal_ok," << yesno(hp.transversal_ok) << "\n";
    csv << "omega1_minus_omega0_abs," << fmt(std::abs(curves.omega1 - curves.omega0))
        << "\n";
    csv << "bound_respected," << yesno(bound_ok) << "\n";
    os << "wrote " << (std::filesystem::path(cfg.output_dir) / "analysis.csv").string()
       << "\n";
    return 0;
}

int cmd_scan(const RunConfig& cfg, std::ostream& os) {
    FeasibilityReport feas = check_feasibility(cfg.model);
    if (!feas.feasible) return report_infeasible(cfg, feas, os);
    Equilibrium eq = compute_equilibrium(cfg.model);
    LinearCoeffs c = linear_coeffs(cfg.model, eq);

    std::ofstream csv = open_output(cfg, "scan.csv");
    config_header(csv, cfg);
    csv << "E,re_lead,im_lead,stable,note\n";
    int failures = 0;
    int n = cfg.scan.n_points;
    for (int i = 0; i < n; ++i) {
        double e = cfg.scan.E_min +
                   (cfg.scan.E_max - cfg.scan.E_min) * double(i) / double(n - 1);
        DelayKernel kernel{cfg.kernel.family, e, cfg.kernel.shape};
        csv << fmt(e) << ",";
        try {
            CharRoot root = rightmost_root(c, kernel);
            csv << fmt(root.lambda.real()) << "," << fmt(root.lambda.imag())
                << "," << yesno(root.lambda.real() < 0.0) << ",\n";
        } catch (const Error& err) {
            ++failures;
            csv << ",,," << csv_note(err.what()) << "\n";
        }
    }
    os << "scanned " << n << " expectations in [" << fmt(cfg.scan.E_min) << ", "
       << fmt(cfg.scan.E_max) << "], " << failures << " failed points\n";
    os << "wrote " << (std::filesystem::path(cfg.output_dir) / "scan.csv").string()
       << "\n";
    return 0;
}

namespace {

void write_trajectory(const RunConfig& cfg, const Trajectory& traj,
                      const std::string& note) {
    std::ofstream csv = open_output(cfg, "trajectory.csv");
    config_header(csv, cfg);
    if (!note.empty()) csv << "# " << note << "\n";
    csv << "t,x1,x2,x3\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i)
        csv << fmt(traj.times[i]) << "," << fmt(traj.states[i][0]) << ","
            << fmt(traj.states[i][1]) << "," << fmt(traj.states[i][2]) << "\n";
}

void write_metrics(const RunConfig& cfg, const CycleMetrics* metrics,
                   const std::string& note) {
    std::ofstream csv = open_output(cfg, "metrics.csv");
    config_header(csv, cfg);
    if (!note.empty()) csv << "# " << note << "\n";
    csv << "amplitude_x1,amplitude_x2,amplitude_x3,period,decaying,"
           "period_rel_err_bound\n";
    if (!metrics) return;
    csv << fmt(metrics->amplitude[0]) << "," << fmt(metrics->amplitude[1]) << ","
        << fmt(metrics->amplitude[2]) << ",";
    if (metrics->period) csv << fmt(*metrics->period);
    csv << "," << yesno(metrics->decaying) << ","
        << fmt(metrics->period_rel_err_bound) << "\n";
}

} // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& os) {
    FeasibilityReport feas = check_feasibility(cfg.model);
    if (!feas.feasible) return report_infeasible(cfg, feas, os);
    Equilibrium eq = compute_equilibrium(cfg.model);

    Trajectory traj;
    try {
        traj = simulate(cfg.model, cfg.kernel, cfg.sim);
    } catch (const BlowUp& e) {
        write_trajectory(cfg, e.partial(), std::string("terminated early: ") + e.what());
        write_metrics(cfg, nullptr, std::string("terminated early: ") + e.what());
        os << "simulation blew up: " << e.what() << "\n";
        os << "partial trajectory written to "
           << (std::filesystem::path(cfg.output_dir) / "trajectory.csv").string()
           << "\n";
        return 4;
    } catch (const StepTooCoarse& e) {
        os << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        os << "config error: " << e.what() << "\n";
        return 1;
    }

    write_trajectory(cfg, traj, "");
    CycleMetrics metrics = limit_cycle_metrics(traj, eq, cfg.sim);
    write_metrics(cfg, &metrics, "");

    os << "integrated " << to_string(cfg.sim.method) << " method to t = "
       << fmt(cfg.sim.t_end) << " (" << traj.states.size() << " samples)\n";
    os << "  post-transient amplitude (x1, x2, x3) = " << fmt(metrics.amplitude[0])
       << ", " << fmt(metrics.amplitude[1]) << ", " << fmt(metrics.amplitude[2])
       << "\n";
    if (metrics.period)
        os << "  period = " << fmt(*metrics.period) << " (peak spacing spread "
           << fmt(metrics.period_rel_err_bound) << ")\n";
    else
        os << "  no stable period detected\n";
    os << "  decaying toward equilibrium: " << yesno(metrics.decaying) << "\n";
    os << "wrote "
       << (std::filesystem::path(cfg.output_dir) / "trajectory.csv").string()
       << " and "
       << (std::filesystem::path(cfg.output_dir) / "metrics.csv").string() << "\n";
    return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& os) {
    std::vector<CriterionResult> results = run_acceptance(cfg);
    int passed = 0, failed = 0, skipped = 0;
    for (const CriterionResult& r : results) {
        const char* tag = "PASS";
        if (r.status == CriterionStatus::Fail) {
            tag = "FAIL";
            ++failed;
        } else if (r.status == CriterionStatus::Skip) {
            tag = "SKIP";
            ++skipped;
        } else {
            ++passed;
        }
        os << "[" << tag << "] " << (r.id < 10 ? " " : "") << r.id << " "
           << r.name;
        if (!r.detail.empty()) os << ": " << r.detail;
        os << "\n";
    }
    os << passed << " passed, " << failed << " failed, " << skipped
       << " skipped\n";
    if (failed == 0 && skipped == 0) return 0;
    if (skipped == int(results.size())) return 2;
    return 1;
}

} // namespace lvhopf
