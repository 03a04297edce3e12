#include "lvhopf/validate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "lvhopf/commands.hpp"
#include "lvhopf/crosscheck.hpp"
#include "lvhopf/errors.hpp"
#include "lvhopf/simulate.hpp"
#include "lvhopf/spectral.hpp"

namespace lvhopf {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::string fmt(double v) { return format_double(v); }

// feasible (a, H) test grid: 10 values of a, 10 harvest fractions from 0
// up to 90% of the positivity threshold
std::vector<ModelParams> feasible_grid() {
    std::vector<ModelParams> grid;
    for (int i = 0; i < 10; ++i) {
        double a = 3.5 + 2.5 * double(i) / 9.0;
        double h_max = harvest_threshold(a);
        for (int j = 0; j < 10; ++j)
            grid.push_back({a, 0.9 * h_max * double(j) / 9.0});
    }
    return grid;
}

struct LinFit {
    double slope = 0.0;
    std::size_t points = 0;
};

LinFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(xs.size());
    my /= double(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return {sxy / sxx, xs.size()};
}

// growth/decay exponent of the deviation from the equilibrium, fitted on
// the log of the squared-deviation envelope inside an amplitude band that
// keeps the fit in the linear regime
std::optional<LinFit> fit_deviation_rate(const Trajectory& traj, const Vec3& star,
                                         double d0, bool growing) {
    auto s_at = [&](std::size_t i) {
        double acc = 0.0;
        for (int c = 0; c < 3; ++c) {
            double d = traj.states[i][c] - star[c];
            acc += d * d;
        }
        return acc;
    };
    // growth is capped at 30 d0 so the fit never leaves the linear regime
    double lo = growing ? 3.0 * d0 : 1e-2 * d0;
    double hi = growing ? 30.0 * d0 : 0.3 * d0;
    double lo2 = lo * lo, hi2 = hi * hi;

    std::vector<double> ts, ls;
    for (std::size_t i = 1; i + 1 < traj.states.size(); ++i) {
        double sm = s_at(i - 1), s0 = s_at(i), sp = s_at(i + 1);
        if (!(s0 > sm && s0 > sp)) continue;
        if (traj.times[i] < 30.0 || s0 < lo2 || s0 > hi2) continue;
        ts.push_back(traj.times[i]);
        ls.push_back(std::log(s0));
    }
    if (ts.size() < 5) {
        // a monotone (non-oscillatory) deviation has no envelope peaks
        ts.clear();
        ls.clear();
        std::size_t stride = std::max<std::size_t>(1, traj.states.size() / 4000);
        for (std::size_t i = 0; i < traj.states.size(); i += stride) {
            double s0 = s_at(i);
            if (traj.times[i] < 30.0 || s0 < lo2 || s0 > hi2) continue;
            ts.push_back(traj.times[i]);
            ls.push_back(std::log(s0));
        }
    }
    if (ts.size() < 5) return std::nullopt;
    LinFit fit = least_squares(ts, ls);
    fit.slope *= 0.5; // squared deviation grows at twice the modal rate
    return fit;
}

class Suite {
public:
    explicit Suite(const RunConfig& cfg) : cfg_(cfg) {}

    std::vector<CriterionResult> run() {
        FeasibilityReport feas = check_feasibility(cfg_.model);
        if (!feas.feasible) {
            std::string why = feas.a_ok
                                  ? "equilibrium is not strictly positive"
                                  : "need a > 2 + sqrt(2) and H >= 0";
            for (int id = 1; id <= 14; ++id)
                results_.push_back({id, name_of(id), CriterionStatus::Skip,
                                    "infeasible model: " + why});
            return results_;
        }
        eq_ = compute_equilibrium(cfg_.model);
        coeffs_ = linear_coeffs(cfg_.model, eq_);
        w0_ = omega0(coeffs_);

        run_criterion(1, [&] { return equilibrium_residual(); });
        run_criterion(2, [&] { return coefficient_identity(); });
        run_criterion(3, [&] { return envelope_bound(); });
        run_criterion(4, [&] { return omega0_identity(); });
        run_criterion(5, [&] { return omega1_bracket(); });
        run_criterion(6, [&] { return moment_backsubstitution(); });
        run_criterion(7, [&] { return bound_consistency(); });
        run_criterion(8, [&] { return rational_reduction_oracle(); });
        run_criterion(9, [&] { return no_delay_oracle(); });
        run_criterion(10, [&] { return transversality_slope(); });
        run_criterion(11, [&] { return method_equivalence(); });
        run_criterion(12, [&] { return hopf_witness(); });
        run_criterion(13, [&] { return degenerate_reductions(); });
        run_criterion(14, [&] { return determinism(); });
        return results_;
    }

private:
    static const char* name_of(int id) {
        switch (id) {
        case 1: return "equilibrium_residual";
        case 2: return "coefficient_identity";
        case 3: return "envelope_bound";
        case 4: return "omega0_identity";
        case 5: return "omega1_bracket";
        case 6: return "moment_backsubstitution";
        case 7: return "bound_consistency";
        case 8: return "rational_reduction_oracle";
        case 9: return "no_delay_oracle";
        case 10: return "transversality_slope";
        case 11: return "method_equivalence";
        case 12: return "hopf_witness";
        case 13: return "degenerate_reductions";
        case 14: return "determinism";
        }
        return "unknown";
    }

    void run_criterion(int id, const std::function<std::string()>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name_of(id);
        try {
            std::string detail = body();
            r.status = CriterionStatus::Pass;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.status = CriterionStatus::Fail;
            r.detail = e.what();
        }
        results_.push_back(r);
    }

    [[noreturn]] static void fail(const std::string& msg) { throw Error(msg); }

    const HopfPoint& hopf(KernelFamily family, int shape) {
        auto key = std::make_pair(family, shape);
        auto it = hopf_cache_.find(key);
        if (it == hopf_cache_.end())
            it = hopf_cache_
                     .emplace(key, critical_expectation(coeffs_, family, shape))
                     .first;
        return it->second;
    }

    DelayKernel cfg_kernel_at(double e) const {
        return {cfg_.kernel.family, e, cfg_.kernel.shape};
    }

    // --- criteria -------------------------------------------------------

    std::string equilibrium_residual() {
        double worst = 0.0;
        for (const ModelParams& p : feasible_grid()) {
            Equilibrium eq = compute_equilibrium(p);
            Vec3 r = rhs_no_delay(p, eq.as_vec());
            worst = std::max(worst, norm_inf(r));
        }
        if (worst >= 1e-10) fail("max equilibrium residual " + fmt(worst));
        return "max residual " + fmt(worst);
    }

    std::string coefficient_identity() {
        double worst = 0.0;
        for (const ModelParams& p : feasible_grid()) {
            Equilibrium eq = compute_equilibrium(p);
            LinearCoeffs c = linear_coeffs(p, eq);
            Mat3 j = jacobian_no_delay(p, eq);
            double s1 = trace(j);
            double s2 = j[0][0] * j[1][1] - j[0][1] * j[1][0] +
                        j[0][0] * j[2][2] - j[0][2] * j[2][0] +
                        j[1][1] * j[2][2] - j[1][2] * j[2][1];
            double s3 = det(j);
            worst = std::max({worst, std::abs(c.a1 + s1),
                              std::abs(c.a2 + c.a4 - s2),
                              std::abs(c.a3 + c.a5 + s3)});
        }
        if (worst >= 1e-10) fail("max coefficient mismatch " + fmt(worst));
        return "max mismatch " + fmt(worst);
    }

    std::string envelope_bound() {
        for (const ModelParams& p : feasible_grid()) {
            LinearCoeffs c = linear_coeffs(p, compute_equilibrium(p));
            if (!(c.a3 * c.a3 - c.a5 * c.a5 > 0.0))
                fail("a3^2 - a5^2 not positive at a=" + fmt(p.a) + " H=" + fmt(p.H));
        }
        std::mt19937 rng(unsigned(cfg_.seed) + 3u);
        std::uniform_int_distribution<int> fam(0, 2);
        std::uniform_int_distribution<int> shp(1, 4);
        std::uniform_real_distribution<double> e_dist(0.0, 3.0);
        std::uniform_real_distribution<double> w_dist(0.0, 3.0);
        double worst_excess = 0.0, worst_dirac = 0.0;
        for (int i = 0; i < 1000; ++i) {
            DelayKernel k{KernelFamily(fam(rng)), e_dist(rng), shp(rng)};
            double w = w_dist(rng);
            double env = coeffs_.a3 * coeffs_.a3 + coeffs_.a4 * coeffs_.a4 * w * w;
            double f = F_of_omega(coeffs_, k, w);
            worst_excess = std::max(worst_excess, f / env - 1.0);
            if (k.family == KernelFamily::Dirac)
                worst_dirac = std::max(worst_dirac, std::abs(f / env - 1.0));
        }
        if (worst_excess > 1e-12)
            fail("envelope exceeded by " + fmt(worst_excess));
        if (worst_dirac > 1e-12)
            fail("point-mass saturation off by " + fmt(worst_dirac));
        return "max excess " + fmt(worst_excess) + ", point-mass defect " +
               fmt(worst_dirac);
    }

    std::string omega0_identity() {
        double env = coeffs_.a3 * coeffs_.a3 + coeffs_.a4 * coeffs_.a4 * w0_ * w0_;
        double defect = std::abs(G_of_omega(coeffs_, w0_) - env) / env;
        if (defect > 1e-9) fail("envelope identity defect " + fmt(defect));
        double wb = crosscheck::omega0_bisection(coeffs_);
        if (std::abs(wb - w0_) > 1e-10)
            fail("closed form vs bisection differ by " + fmt(std::abs(wb - w0_)));
        return "identity defect " + fmt(defect) + ", oracle gap " +
               fmt(std::abs(wb - w0_));
    }

    std::string omega1_bracket() {
        double w1 = omega1(coeffs_, cfg_.kernel);
        if (!(w1 > 0.0) || w1 > w0_ * (1.0 + 1e-12))
            fail("omega1 = " + fmt(w1) + " outside (0, omega0]");
        double f = F_of_omega(coeffs_, cfg_.kernel, w1);
        double g = G_of_omega(coeffs_, w1);
        double rel = std::abs(f - g) / std::max({f, g, 1e-300});
        if (rel > 1e-9) fail("F = G defect " + fmt(rel));
        DelayKernel dirac = DelayKernel::dirac(cfg_.kernel.expectation);
        double w1d = omega1(coeffs_, dirac);
        if (std::abs(w1d - w0_) > 1e-8)
            fail("point-mass omega1 differs from omega0 by " + fmt(std::abs(w1d - w0_)));
        return "omega1 " + fmt(w1) + ", crossing defect " + fmt(rel);
    }

    std::string moment_backsubstitution() {
        double w1 = omega1(coeffs_, cfg_.kernel);
        double C = cos_moment_at_crossing(coeffs_, w1);
        double S = sin_moment_at_crossing(coeffs_, w1);
        double r1 = coeffs_.a3 * C + coeffs_.a4 * w1 * S -
                    (coeffs_.a1 * w1 * w1 - coeffs_.a5);
        double r2 = coeffs_.a4 * w1 * C - coeffs_.a3 * S -
                    (w1 * w1 * w1 - coeffs_.a2 * w1);
        if (std::abs(r1) > 1e-9 || std::abs(r2) > 1e-9)
            fail("back-substitution residuals " + fmt(r1) + ", " + fmt(r2));
        return "residuals " + fmt(r1) + ", " + fmt(r2);
    }

    std::string bound_consistency() {
        std::ostringstream os;
        auto check = [&](KernelFamily family, int shape, const char* label) {
            const HopfPoint& hp = hopf(family, shape);
            double bound = E1_lower_bound(coeffs_, hp.omega_crit);
            if (hp.E_crit < bound * (1.0 - 1e-12))
                fail(std::string(label) + ": E_crit " + fmt(hp.E_crit) +
                     " below bound " + fmt(bound));
            os << label << " E_crit " << fmt(hp.E_crit) << " >= bound "
               << fmt(bound) << "; ";
        };
        check(KernelFamily::Dirac, 1, "dirac");
        check(KernelFamily::Erlang, 1, "erlang k=1");
        check(KernelFamily::Erlang, 2, "erlang k=2");
        check(KernelFamily::Erlang, 3, "erlang k=3");
        return os.str();
    }

    std::string rational_reduction_oracle() {
        double e = cfg_.kernel.expectation > 0.0 ? cfg_.kernel.expectation : 1.0;
        std::ostringstream os;
        for (int k = 1; k <= 3; ++k) {
            DelayKernel kernel = DelayKernel::erlang(k, e);
            CharRoot primary = rightmost_root(coeffs_, kernel);
            auto roots =
                crosscheck::poly_roots(crosscheck::erlang_reduction_coeffs(coeffs_, k, e));
            Complex oracle = crosscheck::rightmost_of(roots);
            double gap = std::abs(primary.lambda - oracle);
            if (gap > 1e-8)
                fail("k=" + std::to_string(k) + ": root gap " + fmt(gap));

            double pad = 0.05 * std::max(1.0, w0_);
            Rect rects[3] = {
                {-5.0 * coeffs_.a1 - 1.0, std::max(1.0, w0_), -pad, 4.0 * w0_},
                {-2.0, 0.5, -1.0, 1.0},
                {-0.5, 1.0, 0.0, 2.0},
            };
            for (Rect r : rects) {
                // keep oracle roots clear of the contour so both counts
                // resolve the same set
                for (int tries = 0; tries < 5; ++tries) {
                    bool clear = true;
                    for (const Complex& z : roots) {
                        double d = std::min(
                            std::min(std::abs(z.real() - r.re_lo),
                                     std::abs(z.real() - r.re_hi)),
                            std::min(std::abs(z.imag() - r.im_lo),
                                     std::abs(z.imag() - r.im_hi)));
                        if (d < 1e-6) clear = false;
                    }
                    if (clear) break;
                    r.re_lo -= 0.0137; r.re_hi += 0.0191;
                    r.im_lo -= 0.0113; r.im_hi += 0.0157;
                }
                int counted = count_roots_in_rectangle(coeffs_, kernel, r);
                int expected = 0;
                for (const Complex& z : roots)
                    if (r.re_lo < z.real() && z.real() < r.re_hi &&
                        r.im_lo < z.imag() && z.imag() < r.im_hi)
                        ++expected;
                if (counted != expected)
                    fail("k=" + std::to_string(k) + ": rectangle count " +
                         std::to_string(counted) + " vs oracle " +
                         std::to_string(expected));
            }
            os << "k=" << k << " gap " << fmt(std::abs(primary.lambda - oracle))
               << "; ";
        }
        return os.str();
    }

    std::string no_delay_oracle() {
        CharRoot primary = rightmost_root(coeffs_, cfg_kernel_at(0.0));
        Complex oracle =
            crosscheck::rightmost_of(crosscheck::jacobian_eigenvalues(cfg_.model, eq_));
        double gap = std::abs(primary.lambda - oracle);
        if (gap > 1e-8) fail("eigenvalue gap " + fmt(gap));
        return "eigenvalue gap " + fmt(gap);
    }

    std::string transversality_slope() {
        const HopfPoint& hp = hopf(cfg_.kernel.family, cfg_.kernel.shape);
        if (!hp.transversal_ok || std::abs(hp.transversal_slope) <= 1e-8)
            fail("crossing speed " + fmt(hp.transversal_slope) + " not nonzero");
        double h = 1e-4 * hp.E_crit;
        double mu_hi =
            rightmost_root(coeffs_, cfg_kernel_at(hp.E_crit + h)).lambda.real();
        double mu_lo =
            rightmost_root(coeffs_, cfg_kernel_at(hp.E_crit - h)).lambda.real();
        double secant = (mu_hi - mu_lo) / (2.0 * h);
        double rel = std::abs(secant - hp.transversal_slope) /
                     std::abs(hp.transversal_slope);
        if (rel > 1e-3)
            fail("secant " + fmt(secant) + " vs analytic " +
                 fmt(hp.transversal_slope) + ", rel " + fmt(rel));
        return "slope " + fmt(hp.transversal_slope) + ", secant rel err " + fmt(rel);
    }

    std::string method_equivalence() {
        const HopfPoint& hp = hopf(KernelFamily::Erlang, 2);
        DelayKernel kernel = DelayKernel::erlang(2, 0.9 * hp.E_crit);
        SimConfig sc;
        sc.t_end = 50.0;
        sc.dt = 1e-3;
        sc.history = HistoryKind::Perturbed;
        sc.perturbation = cfg_.sim.perturbation;
        sc.truncation_epsilon = cfg_.sim.truncation_epsilon;
        Trajectory chain = simulate_chain(cfg_.model, kernel, sc);
        Trajectory conv = simulate_convolution(cfg_.model, kernel, sc);
        double sup = 0.0;
        for (std::size_t i = 0; i < chain.states.size(); ++i)
            sup = std::max(sup, norm_inf(sub(chain.states[i], conv.states[i])));
        if (sup > 1e-4) fail("sup-norm difference " + fmt(sup));
        return "sup-norm difference " + fmt(sup);
    }

    // The run is sized to traverse the fit band and no more: a growing
    // perturbation eventually saturates nonlinearly (the predator can crash
    // to extinction well past the crossing), so aim at 50x growth, and keep
    // whatever was integrated if the tail still blows up.
    Trajectory witness_run(double e, double mu_abs, bool growing) {
        SimConfig sc = cfg_.sim;
        sc.history = HistoryKind::Perturbed;
        double target = growing ? std::log(50.0) : std::log(100.0);
        sc.t_end = std::clamp(1.15 * target / std::max(mu_abs, 1e-6) + 50.0,
                              300.0, 2000.0);
        try {
            return simulate_convolution(cfg_.model, cfg_kernel_at(e), sc);
        } catch (const BlowUp& b) {
            return b.partial();
        }
    }

    std::string hopf_witness() {
        const HopfPoint& hp = hopf(cfg_.kernel.family, cfg_.kernel.shape);
        double d0 = cfg_.sim.perturbation * eq_.x3;
        std::ostringstream os;

        struct Case {
            double factor;
            bool growing;
        };
        Case cases[3] = {{0.5, false}, {0.9, false}, {1.1, true}};
        Trajectory kept_super; // reused for the period check
        for (const Case& cs : cases) {
            double e = cs.factor * hp.E_crit;
            double mu = rightmost_root(coeffs_, cfg_kernel_at(e)).lambda.real();
            if ((mu < 0.0) == cs.growing)
                fail("predicted rate " + fmt(mu) + " has the wrong sign at E = " +
                     fmt(e));
            Trajectory traj = witness_run(e, std::abs(mu), cs.growing);
            auto fit = fit_deviation_rate(traj, eq_.as_vec(), d0, cs.growing);
            if (!fit) fail("too few fit points at E = " + fmt(e));
            double rel = std::abs(fit->slope - mu) / std::abs(mu);
            if (rel > 0.10)
                fail("fitted rate " + fmt(fit->slope) + " vs predicted " + fmt(mu) +
                     " at E = " + fmt(e) + ", rel " + fmt(rel));
            os << "E/E_crit " << fmt(cs.factor) << ": rate rel err " << fmt(rel)
               << "; ";

            if (cs.factor == 0.9) {
                // the perturbation must have shrunk at least tenfold
                double tail = 0.0;
                std::size_t n = traj.states.size();
                for (std::size_t i = n - n / 10; i < n; ++i)
                    tail = std::max(tail, std::abs(traj.states[i][2] - eq_.x3));
                if (tail > d0 / 10.0)
                    fail("subcritical tail deviation " + fmt(tail) +
                         " exceeds a tenth of " + fmt(d0));
                os << "decay factor " << fmt(d0 / std::max(tail, 1e-300)) << "; ";
            }
            if (cs.growing) kept_super = std::move(traj);
        }

        SimConfig mc = cfg_.sim;
        CycleMetrics metrics = limit_cycle_metrics(kept_super, eq_, mc);
        if (metrics.decaying) fail("supercritical run still decaying");
        if (!metrics.period) fail("no stable period in the supercritical run");
        double predicted = kTwoPi / hp.omega_crit;
        double rel = std::abs(*metrics.period - predicted) / predicted;
        if (rel > 0.05)
            fail("period " + fmt(*metrics.period) + " vs predicted " +
                 fmt(predicted) + ", rel " + fmt(rel));
        os << "period rel err " << fmt(rel);
        return os.str();
    }

    std::string degenerate_reductions() {
        // E = 0 must reproduce a plain no-delay integration
        SimConfig sc = cfg_.sim;
        sc.t_end = 50.0;
        sc.history = HistoryKind::Perturbed;
        Trajectory sim = simulate_convolution(cfg_.model, cfg_kernel_at(0.0), sc);

        Vec3 x = eq_.as_vec();
        x[2] *= 1.0 + sc.perturbation;
        double sup = 0.0;
        long n = std::lround(sc.t_end / sc.dt);
        sup = std::max(sup, norm_inf(sub(sim.states[0], x)));
        for (long i = 0; i < n; ++i) {
            Vec3 k1 = rhs_no_delay(cfg_.model, x);
            Vec3 s2, s3, s4;
            for (int c = 0; c < 3; ++c) s2[c] = x[c] + 0.5 * sc.dt * k1[c];
            Vec3 k2 = rhs_no_delay(cfg_.model, s2);
            for (int c = 0; c < 3; ++c) s3[c] = x[c] + 0.5 * sc.dt * k2[c];
            Vec3 k3 = rhs_no_delay(cfg_.model, s3);
            for (int c = 0; c < 3; ++c) s4[c] = x[c] + sc.dt * k3[c];
            Vec3 k4 = rhs_no_delay(cfg_.model, s4);
            for (int c = 0; c < 3; ++c)
                x[c] += sc.dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            sup = std::max(sup,
                           norm_inf(sub(sim.states[std::size_t(i + 1)], x)));
        }
        if (sup > 1e-10) fail("degenerate-kernel mismatch " + fmt(sup));

        // a constant equilibrium history must stay put under both methods
        SimConfig ec = cfg_.sim;
        ec.t_end = 50.0;
        ec.history = HistoryKind::ConstantAtEquilibrium;
        double drift = 0.0;
        Trajectory chain =
            simulate_chain(cfg_.model, DelayKernel::erlang(2, 1.0), ec);
        for (const Vec3& s : chain.states)
            drift = std::max(drift, norm_inf(sub(s, eq_.as_vec())));
        DelayKernel conv_kernel =
            cfg_.kernel.expectation > 0.0 ? cfg_.kernel : cfg_kernel_at(1.0);
        Trajectory conv = simulate_convolution(cfg_.model, conv_kernel, ec);
        for (const Vec3& s : conv.states)
            drift = std::max(drift, norm_inf(sub(s, eq_.as_vec())));
        if (drift > 1e-6) fail("equilibrium drift " + fmt(drift));
        return "degenerate mismatch " + fmt(sup) + ", equilibrium drift " +
               fmt(drift);
    }

    std::string determinism() {
        namespace fs = std::filesystem;
        RunConfig pcfg = cfg_;
        pcfg.sim.t_end = std::min(cfg_.sim.t_end, 50.0);
        pcfg.output_dir =
            (fs::path(cfg_.output_dir) / "determinism").string();

        const char* files[] = {"analysis.csv", "scan.csv", "trajectory.csv",
                               "metrics.csv"};
        std::map<std::string, std::string> first;
        for (int round = 0; round < 2; ++round) {
            std::ostringstream sink;
            if (cmd_analyze(pcfg, sink) != 0) fail("analysis step failed");
            if (cmd_scan(pcfg, sink) != 0) fail("scan step failed");
            if (cmd_simulate(pcfg, sink) != 0) fail("simulation step failed");
            for (const char* f : files) {
                std::ifstream in(fs::path(pcfg.output_dir) / f,
                                 std::ios::binary);
                if (!in) fail(std::string("missing output ") + f);
                std::ostringstream ss;
                ss << in.rdbuf();
                if (round == 0) {
                    first[f] = ss.str();
                } else if (first[f] != ss.str()) {
                    fail(std::string("byte difference in ") + f);
                }
            }
        }
        return "four outputs byte-identical across repeated runs";
    }

    RunConfig cfg_;
    Equilibrium eq_;
    LinearCoeffs coeffs_;
    double w0_ = 0.0;
    std::map<std::pair<KernelFamily, int>, HopfPoint> hopf_cache_;
    std::vector<CriterionResult> results_;
};

} // namespace

std::vector<CriterionResult> run_acceptance(const RunConfig& cfg) {
    return Suite(cfg).run();
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) {
        return r.status == CriterionStatus::Pass;
    });
}

} // namespace lvhopf
