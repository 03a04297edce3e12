#include "lvhopf/model.hpp"

#include <cmath>

#include "lvhopf/errors.hpp"

namespace lvhopf {

namespace {

constexpr double kFeasibleA = 2.0 + 1.4142135623730951; // 2 + sqrt(2)

bool positive(double x) { return x > 0.0; }

} // namespace

double harvest_threshold(double a) {
    // x2*(H) = 0  <=>  x3* = 1/(3a-2); substituting into the equilibrium
    // quadratic gives H = (a^2 - 4a + 2) / (3a - 2)^2. The squared
    // denominator comes from the derivation, not the printed closed form.
    const double d = 3.0 * a - 2.0;
    return (a * a - 4.0 * a + 2.0) / (d * d);
}

Equilibrium compute_equilibrium(const ModelParams& params) {
    const double a = params.a;
    const double H = params.H;
    if (H < 0.0)
        throw InfeasibleParams("harvest rate H must be nonnegative");
    if (!(a > kFeasibleA))
        throw InfeasibleParams("need a > 2 + sqrt(2) for a positive interior equilibrium");

    // (a-2)(2a-1) x3^2 - x3 - 2H = 0
    const double q = (a - 2.0) * (2.0 * a - 1.0);
    const double disc = 1.0 + 8.0 * H * q;
    if (disc < 0.0)
        throw InfeasibleParams("equilibrium quadratic has no real root");
    const double sq = std::sqrt(disc);

    const double roots[2] = {(1.0 + sq) / (2.0 * q), (1.0 - sq) / (2.0 * q)};
    int chosen = -1;
    for (int i = 0; i < 2; ++i) {
        const double x3 = roots[i];
        const double x1 = 2.0 * (a - 1.0) * x3;
        const double x2 = 1.0 - (3.0 * a - 2.0) * x3;
        if (positive(x1) && positive(x2) && positive(x3)) {
            if (chosen >= 0)
                throw InfeasibleParams("equilibrium quadratic has two admissible roots");
            chosen = i;
        }
    }
    if (chosen < 0)
        throw InfeasibleParams("no quadratic root gives a strictly positive equilibrium");

    Equilibrium eq;
    eq.x3 = roots[chosen];
    eq.x1 = 2.0 * (a - 1.0) * eq.x3;
    eq.x2 = 1.0 - (3.0 * a - 2.0) * eq.x3;
    return eq;
}

FeasibilityReport check_feasibility(const ModelParams& params) {
    FeasibilityReport rep;
    rep.a_ok = params.a > kFeasibleA && params.H >= 0.0;
    rep.h_threshold = harvest_threshold(params.a);
    rep.margins.push_back({"a_slack", params.a - kFeasibleA});
    rep.margins.push_back({"h_slack", rep.h_threshold - params.H});

    Equilibrium eq;
    bool have_eq = false;
    try {
        eq = compute_equilibrium(params);
        have_eq = true;
    } catch (const InfeasibleParams&) {
        // fall through; report the failed positivity directly
    }

    if (have_eq) {
        rep.positivity_ok = eq.x1 > 0.0 && eq.x2 > 0.0 && eq.x3 > 0.0;
        rep.margins.push_back({"x1", eq.x1});
        rep.margins.push_back({"x2", eq.x2});
        rep.margins.push_back({"x3", eq.x3});
        const auto rh = routh_hurwitz(linear_coeffs(params, eq));
        rep.routh_hurwitz_ok = rh.ok;
        for (const auto& m : rh.margins) rep.margins.push_back(m);
    } else if (params.a > 2.0 && params.H >= 0.0) {
        // The quadratic still has a positive root; report the components
        // so the caller can see which one fails.
        const double q = (params.a - 2.0) * (2.0 * params.a - 1.0);
        const double x3 = (1.0 + std::sqrt(1.0 + 8.0 * params.H * q)) / (2.0 * q);
        rep.margins.push_back({"x1", 2.0 * (params.a - 1.0) * x3});
        rep.margins.push_back({"x2", 1.0 - (3.0 * params.a - 2.0) * x3});
        rep.margins.push_back({"x3", x3});
        rep.positivity_ok = false;
    } else {
        rep.positivity_ok = false;
    }

    rep.feasible = rep.a_ok && rep.positivity_ok;
    return rep;
}

Vec3 rhs_delayed(const ModelParams& params, const Vec3& state, double conv1,
                 double conv2) {
    const double x1 = state[0], x2 = state[1], x3 = state[2];
    return {
        x1 * (1.0 - x1 - x2 - params.a * x3),
        x2 * (1.0 - 1.5 * x1 - x2 - x3),
        x3 * (-1.0 + 0.5 * params.a * conv1 + 0.5 * conv2) - params.H,
    };
}

Vec3 rhs_no_delay(const ModelParams& params, const Vec3& state) {
    return rhs_delayed(params, state, state[0], state[1]);
}

Mat3 jacobian_no_delay(const ModelParams& params, const Equilibrium& eq) {
    const double a = params.a;
    return {{
        {-eq.x1, -eq.x1, -a * eq.x1},
        {-1.5 * eq.x2, -eq.x2, -eq.x2},
        {0.5 * a * eq.x3, 0.5 * eq.x3, params.H / eq.x3},
    }};
}

LinearCoeffs linear_coeffs(const ModelParams& params, const Equilibrium& eq) {
    if (eq.x3 == 0.0)
        throw InfeasibleParams("linearization undefined at x3* = 0");
    const double a = params.a;
    const double h_over_x3 = params.H / eq.x3;
    LinearCoeffs c;
    c.a1 = eq.x1 + eq.x2 - h_over_x3;
    c.a2 = -0.5 * eq.x1 * eq.x2 - (eq.x1 + eq.x2) * h_over_x3;
    c.a3 = 0.25 * eq.x1 * eq.x2 * eq.x3 * (2.0 * a - 1.0) * (a - 2.0);
    c.a4 = 0.5 * (a * a * eq.x1 + eq.x2) * eq.x3;
    c.a5 = 0.5 * eq.x1 * eq.x2 * h_over_x3;
    return c;
}

RouthHurwitzResult routh_hurwitz(const LinearCoeffs& coeffs) {
    const double b1 = coeffs.a1;
    const double b2 = coeffs.a2 + coeffs.a4;
    const double b3 = coeffs.a3 + coeffs.a5;
    const double hurwitz = b1 * b2 - b3;

    RouthHurwitzResult r;
    r.margins.push_back({"a1", b1});
    r.margins.push_back({"a2_plus_a4", b2});
    r.margins.push_back({"a3_plus_a5", b3});
    r.margins.push_back({"a1(a2+a4)-(a3+a5)", hurwitz});
    r.ok = b1 > 0.0 && b2 > 0.0 && b3 > 0.0 && hurwitz > 0.0;
    return r;
}

} // namespace lvhopf
