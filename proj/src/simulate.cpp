#include "lvhopf/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lvhopf {

namespace {

long step_count(const SimConfig& config) {
    if (config.dt <= 0.0) throw ConfigError("sim.dt must be positive");
    if (config.t_end <= 0.0) throw ConfigError("sim.t_end must be positive");
    return std::lround(config.t_end / config.dt);
}

Vec3 initial_state(const Equilibrium& eq, const SimConfig& config) {
    Vec3 x = eq.as_vec();
    if (config.history == HistoryKind::Perturbed)
        x[2] *= 1.0 + config.perturbation;
    return x;
}

void check_state(const Vec3& x, double t, Trajectory& traj) {
    for (double v : x) {
        if (!std::isfinite(v) || std::abs(v) > 1e6) {
            std::ostringstream os;
            os << "state exceeded 1e6 at t = " << t;
            throw BlowUp(os.str(), std::move(traj));
        }
    }
    for (int i = 0; i < 3; ++i) {
        if (x[i] <= 0.0) {
            std::ostringstream os;
            os << "population x" << i + 1 << " reached " << x[i] << " at t = " << t;
            throw BlowUp(os.str(), std::move(traj));
        }
    }
}

} // namespace

Trajectory simulate_chain(const ModelParams& params, const DelayKernel& kernel,
                          const SimConfig& config) {
    if (kernel.family != KernelFamily::Erlang || kernel.expectation <= 0.0)
        throw NotErlang("chain reduction requires an Erlang kernel with E > 0");
    const int k = kernel.shape;
    const double rate = double(k) / kernel.expectation;
    const Equilibrium eq = compute_equilibrium(params);

    const std::size_t dim = 3 + 2 * std::size_t(k);
    std::vector<double> u(dim);
    {
        Vec3 x0 = initial_state(eq, config);
        u[0] = x0[0]; u[1] = x0[1]; u[2] = x0[2];
        // stage variables start on the constant history values
        for (int j = 0; j < k; ++j) u[3 + j] = eq.x1;
        for (int j = 0; j < k; ++j) u[3 + k + j] = eq.x2;
    }

    auto deriv = [&](const std::vector<double>& s, std::vector<double>& d) {
        Vec3 x{s[0], s[1], s[2]};
        Vec3 dx = rhs_delayed(params, x, s[3 + k - 1], s[3 + 2 * k - 1]);
        d[0] = dx[0]; d[1] = dx[1]; d[2] = dx[2];
        d[3] = rate * (s[0] - s[3]);
        for (int j = 1; j < k; ++j) d[3 + j] = rate * (s[3 + j - 1] - s[3 + j]);
        d[3 + k] = rate * (s[1] - s[3 + k]);
        for (int j = 1; j < k; ++j)
            d[3 + k + j] = rate * (s[3 + k + j - 1] - s[3 + k + j]);
    };

    const long n = step_count(config);
    const double dt = config.dt;
    Trajectory traj;
    traj.dt = dt;
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
    traj.times.push_back(0.0);
    traj.states.push_back({u[0], u[1], u[2]});

    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    for (long i = 0; i < n; ++i) {
        deriv(u, k1);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = u[j] + 0.5 * dt * k1[j];
        deriv(tmp, k2);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = u[j] + 0.5 * dt * k2[j];
        deriv(tmp, k3);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = u[j] + dt * k3[j];
        deriv(tmp, k4);
        for (std::size_t j = 0; j < dim; ++j)
            u[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        double t = double(i + 1) * dt;
        Vec3 x{u[0], u[1], u[2]};
        check_state(x, t, traj);
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
    return traj;
}

namespace {

// Per-component history x_i(t) at t = index * dt, with `pre` entries of
// constant pre-history before t = 0. Only x1 and x2 are ever convolved.
class HistoryBuffer {
public:
    HistoryBuffer(long pre, const Vec3& history_value) : pre_(pre) {
        // steps -pre..-1 only; step 0 is the pushed initial state
        for (int c = 0; c < 2; ++c)
            comp_[c].assign(std::size_t(pre), history_value[c]);
    }

    void push(const Vec3& x) {
        comp_[0].push_back(x[0]);
        comp_[1].push_back(x[1]);
    }

    double at(int c, long step) const { return comp_[c][std::size_t(step + pre_)]; }

    // value at step index m + 1/2: cubic through m-1..m+2 when the right
    // neighbour exists, else the quadratic through m-1..m+1
    double at_half(int c, long m, long newest) const {
        double ym1 = at(c, m - 1), y0 = at(c, m), y1 = at(c, m + 1);
        if (m + 2 <= newest) {
            double y2 = at(c, m + 2);
            return (-ym1 + 9.0 * y0 + 9.0 * y1 - y2) / 16.0;
        }
        return -0.125 * ym1 + 0.75 * y0 + 0.375 * y1;
    }

    // value at a fractional step index, 4-point Lagrange; the caller keeps
    // idx at least two grid points behind the newest entry
    double at_fractional(int c, double idx) const {
        double fl = std::floor(idx);
        long m = long(fl);
        double th = idx - fl;
        double ym1 = at(c, m - 1), y0 = at(c, m);
        double y1 = at(c, m + 1), y2 = at(c, m + 2);
        double wm1 = -th * (th - 1.0) * (th - 2.0) / 6.0;
        double w0 = (th + 1.0) * (th - 1.0) * (th - 2.0) / 2.0;
        double w1 = -(th + 1.0) * th * (th - 2.0) / 2.0;
        double w2 = (th + 1.0) * th * (th - 1.0) / 6.0;
        return wm1 * ym1 + w0 * y0 + w1 * y1 + w2 * y2;
    }

private:
    long pre_;
    std::vector<double> comp_[2];
};

} // namespace

Trajectory simulate_convolution(const ModelParams& params,
                                const DelayKernel& kernel,
                                const SimConfig& config) {
    const Equilibrium eq = compute_equilibrium(params);
    const double dt = config.dt;
    const long n = step_count(config);
    const double e = kernel.expectation;

    const bool no_delay = e == 0.0;
    const bool dirac = kernel.family == KernelFamily::Dirac;
    if (dirac && !no_delay && dt > e / 20.0)
        throw StepTooCoarse("Dirac lag needs dt <= E/20");

    std::vector<double> w;
    long pre = 2;
    if (!no_delay && !dirac) {
        w = quadrature_weights(kernel, dt, config.truncation_epsilon);
        pre = long(w.size()) + 2;
    } else if (dirac && !no_delay) {
        pre = long(std::ceil(e / dt)) + 3;
    }
    const long nw = w.empty() ? 0 : long(w.size()) - 1;

    HistoryBuffer hist(pre, eq.as_vec());
    Vec3 x = initial_state(eq, config);
    hist.push(x);

    Trajectory traj;
    traj.dt = dt;
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(x);

    // lagged partial sums (j >= 1 terms) are stage-shared: the half-step
    // stages see identical history, and the whole-step sum at step i is the
    // start-of-step sum at i+1
    double part0[2] = {0.0, 0.0};
    auto integer_partial = [&](long step, double* out) {
        for (int c = 0; c < 2; ++c) {
            double s = 0.0;
            for (long j = 1; j <= nw; ++j) s += w[j] * hist.at(c, step - j);
            out[c] = s;
        }
    };
    if (nw > 0) integer_partial(0, part0);

    auto rhs_at = [&](const Vec3& s, long step, int half_offset,
                      const double* partial) {
        double c1, c2;
        if (no_delay) {
            c1 = s[0];
            c2 = s[1];
        } else if (dirac) {
            double idx = double(step) + 0.5 * half_offset - e / dt;
            c1 = hist.at_fractional(0, idx);
            c2 = hist.at_fractional(1, idx);
        } else {
            c1 = w[0] * s[0] + partial[0];
            c2 = w[0] * s[1] + partial[1];
        }
        return rhs_delayed(params, s, c1, c2);
    };

    for (long i = 0; i < n; ++i) {
        double part_half[2] = {0.0, 0.0}, part1[2] = {0.0, 0.0};
        if (nw > 0) {
            for (int c = 0; c < 2; ++c) {
                double s = 0.0;
                for (long j = 1; j <= nw; ++j) s += w[j] * hist.at_half(c, i - j, i);
                part_half[c] = s;
            }
            integer_partial(i + 1, part1);
        }

        Vec3 k1 = rhs_at(x, i, 0, part0);
        Vec3 s2{x[0] + 0.5 * dt * k1[0], x[1] + 0.5 * dt * k1[1],
                x[2] + 0.5 * dt * k1[2]};
        Vec3 k2 = rhs_at(s2, i, 1, part_half);
        Vec3 s3{x[0] + 0.5 * dt * k2[0], x[1] + 0.5 * dt * k2[1],
                x[2] + 0.5 * dt * k2[2]};
        Vec3 k3 = rhs_at(s3, i, 1, part_half);
        Vec3 s4{x[0] + dt * k3[0], x[1] + dt * k3[1], x[2] + dt * k3[2]};
        Vec3 k4 = rhs_at(s4, i, 2, part1);
        for (int c = 0; c < 3; ++c)
            x[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);

        double t = double(i + 1) * dt;
        check_state(x, t, traj);
        hist.push(x);
        traj.times.push_back(t);
        traj.states.push_back(x);
        part0[0] = part1[0];
        part0[1] = part1[1];
    }
    return traj;
}

Trajectory simulate(const ModelParams& params, const DelayKernel& kernel,
                    const SimConfig& config) {
    return config.method == SimMethod::Chain
               ? simulate_chain(params, kernel, config)
               : simulate_convolution(params, kernel, config);
}

CycleMetrics limit_cycle_metrics(const Trajectory& traj, const Equilibrium& eq,
                                 const SimConfig& config) {
    const std::size_t n = traj.states.size();
    std::size_t start = std::size_t(double(n) * config.transient_fraction);
    if (start >= n || n - start < 16)
        throw TooShort("post-transient window has too few samples");

    CycleMetrics m;
    for (int c = 0; c < 3; ++c) {
        double lo = traj.states[start][c], hi = lo;
        for (std::size_t i = start; i < n; ++i) {
            lo = std::min(lo, traj.states[i][c]);
            hi = std::max(hi, traj.states[i][c]);
        }
        m.amplitude[c] = 0.5 * (hi - lo);
    }

    // peaks of x3 by 3-point comparison, refined to the parabola vertex
    std::vector<double> peak_t, peak_v;
    for (std::size_t i = std::max(start, std::size_t(1)); i + 1 < n; ++i) {
        double ym1 = traj.states[i - 1][2], y0 = traj.states[i][2],
               y1 = traj.states[i + 1][2];
        if (!(y0 > ym1 && y0 > y1)) continue;
        double denom = ym1 - 2.0 * y0 + y1;
        double shift = denom != 0.0 ? 0.5 * (ym1 - y1) / denom : 0.0;
        peak_t.push_back(traj.times[i] + shift * traj.dt);
        peak_v.push_back(y0 - 0.25 * (ym1 - y1) * shift);
    }

    const double flat = 1e-8;
    if (m.amplitude[2] < flat) {
        m.decaying = true; // constant signal, nothing left to decay
        return m;
    }

    if (peak_v.size() >= 2) {
        bool shrinking = true;
        for (std::size_t i = 0; i + 1 < peak_v.size(); ++i) {
            double d0 = std::abs(peak_v[i] - eq.x3);
            double d1 = std::abs(peak_v[i + 1] - eq.x3);
            if (!(d1 <= 0.98 * d0)) {
                shrinking = false;
                break;
            }
        }
        m.decaying = shrinking;
    } else {
        // no oscillation to grade; compare endpoints of the window
        double first = std::abs(traj.states[start][2] - eq.x3);
        double last = std::abs(traj.states[n - 1][2] - eq.x3);
        m.decaying = last <= first;
    }

    if (peak_t.size() >= 4) {
        std::vector<double> gaps(peak_t.size() - 1);
        double mean = 0.0;
        for (std::size_t i = 0; i + 1 < peak_t.size(); ++i) {
            gaps[i] = peak_t[i + 1] - peak_t[i];
            mean += gaps[i];
        }
        mean /= double(gaps.size());
        double worst = 0.0;
        for (double g : gaps) worst = std::max(worst, std::abs(g - mean) / mean);
        if (worst < 0.05) {
            m.period = mean;
            m.period_rel_err_bound = worst;
        }
    }
    return m;
}

} // namespace lvhopf
