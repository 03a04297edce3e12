#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lvhopf/errors.hpp"
#include "lvhopf/model.hpp"

using namespace lvhopf;

namespace {

// closed form at (a, H) = (4, 0.01): x3* solves 14 x^2 - x - 0.02 = 0
const double kX3 = (1.0 + std::sqrt(2.12)) / 28.0;

Mat3 numeric_jacobian(const ModelParams& p, const Vec3& x0) {
    Mat3 j{};
    const double h = 1e-6;
    for (int col = 0; col < 3; ++col) {
        Vec3 hi = x0, lo = x0;
        hi[col] += h;
        lo[col] -= h;
        Vec3 fh = rhs_no_delay(p, hi), fl = rhs_no_delay(p, lo);
        for (int row = 0; row < 3; ++row) j[row][col] = (fh[row] - fl[row]) / (2.0 * h);
    }
    return j;
}

} // namespace

TEST_CASE("equilibrium matches the quadratic closed form at the default") {
    Equilibrium eq = compute_equilibrium({4.0, 0.01});
    CHECK(eq.x3 == doctest::Approx(kX3).epsilon(1e-14));
    CHECK(eq.x1 == doctest::Approx(6.0 * kX3).epsilon(1e-14));
    CHECK(eq.x2 == doctest::Approx(1.0 - 10.0 * kX3).epsilon(1e-14));
}

TEST_CASE("equilibrium zeroes the vector field") {
    for (double a : {3.6, 4.0, 5.0, 6.0}) {
        for (double h_frac : {0.0, 0.3, 0.8}) {
            ModelParams p{a, h_frac * harvest_threshold(a)};
            Equilibrium eq = compute_equilibrium(p);
            CHECK(eq.x1 > 0.0);
            CHECK(eq.x2 > 0.0);
            CHECK(eq.x3 > 0.0);
            CHECK(norm_inf(rhs_no_delay(p, eq.as_vec())) < 1e-12);
        }
    }
}

TEST_CASE("infeasible parameters are rejected") {
    CHECK_THROWS_AS(compute_equilibrium({3.0, 0.01}), InfeasibleParams);
    CHECK_THROWS_AS(compute_equilibrium({2.0 + std::sqrt(2.0), 0.0}), InfeasibleParams);
    CHECK_THROWS_AS(compute_equilibrium({4.0, -1e-6}), InfeasibleParams);
    // harvest beyond the prey-positivity threshold
    CHECK_THROWS_AS(compute_equilibrium({4.0, 0.021}), InfeasibleParams);
}

TEST_CASE("harvest threshold at a = 4 is exactly 0.02") {
    CHECK(harvest_threshold(4.0) == doctest::Approx(0.02).epsilon(1e-15));
    // threshold is the H where x2* hits zero
    ModelParams p{4.0, harvest_threshold(4.0) * (1.0 - 1e-9)};
    Equilibrium eq = compute_equilibrium(p);
    CHECK(eq.x2 > 0.0);
    CHECK(eq.x2 < 1e-8);
}

TEST_CASE("feasibility report explains both failure modes") {
    FeasibilityReport low_a = check_feasibility({3.0, 0.01});
    CHECK_FALSE(low_a.feasible);
    CHECK_FALSE(low_a.a_ok);

    FeasibilityReport high_h = check_feasibility({4.0, 0.05});
    CHECK_FALSE(high_h.feasible);
    CHECK(high_h.a_ok);
    CHECK_FALSE(high_h.positivity_ok);
    CHECK(high_h.h_threshold == doctest::Approx(0.02).epsilon(1e-14));

    FeasibilityReport ok = check_feasibility({4.0, 0.01});
    CHECK(ok.feasible);
    CHECK(ok.routh_hurwitz_ok);
}

TEST_CASE("characteristic coefficients agree with the Jacobian invariants") {
    for (double a : {3.6, 4.0, 5.5}) {
        ModelParams p{a, 0.4 * harvest_threshold(a)};
        Equilibrium eq = compute_equilibrium(p);
        LinearCoeffs c = linear_coeffs(p, eq);
        Mat3 j = jacobian_no_delay(p, eq);

        double s2 = j[0][0] * j[1][1] - j[0][1] * j[1][0] +
                    j[0][0] * j[2][2] - j[0][2] * j[2][0] +
                    j[1][1] * j[2][2] - j[1][2] * j[2][1];
        CHECK(c.a1 == doctest::Approx(-trace(j)).epsilon(1e-12));
        CHECK(c.a2 + c.a4 == doctest::Approx(s2).epsilon(1e-12));
        CHECK(c.a3 + c.a5 == doctest::Approx(-det(j)).epsilon(1e-12));
    }
}

TEST_CASE("analytic Jacobian matches central differences") {
    ModelParams p{4.0, 0.01};
    Equilibrium eq = compute_equilibrium(p);
    Mat3 analytic = jacobian_no_delay(p, eq);
    Mat3 numeric = numeric_jacobian(p, eq.as_vec());
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
            CHECK(analytic[r][col] == doctest::Approx(numeric[r][col]).epsilon(1e-6));
}

TEST_CASE("a5 vanishes exactly without harvest") {
    ModelParams p{4.0, 0.0};
    LinearCoeffs c = linear_coeffs(p, compute_equilibrium(p));
    CHECK(c.a5 == 0.0);
}

TEST_CASE("delay-free cubic is stable at the default parameters") {
    LinearCoeffs c = linear_coeffs({4.0, 0.01}, compute_equilibrium({4.0, 0.01}));
    RouthHurwitzResult rh = routh_hurwitz(c);
    CHECK(rh.ok);
    REQUIRE(rh.margins.size() == 4);
    for (const Margin& m : rh.margins) CHECK(m.value > 0.0);
}

TEST_CASE("delayed right side reduces to the plain one at zero lag") {
    ModelParams p{4.5, 0.005};
    Vec3 x{0.4, 0.2, 0.1};
    Vec3 plain = rhs_no_delay(p, x);
    Vec3 delayed = rhs_delayed(p, x, x[0], x[1]);
    for (int c = 0; c < 3; ++c) CHECK(plain[c] == delayed[c]);
}

TEST_CASE("only the predator equation sees the convolved history") {
    ModelParams p{4.0, 0.01};
    Vec3 x{0.5, 0.12, 0.09};
    Vec3 base = rhs_delayed(p, x, 0.3, 0.2);
    Vec3 moved = rhs_delayed(p, x, 0.31, 0.18);
    CHECK(base[0] == moved[0]);
    CHECK(base[1] == moved[1]);
    CHECK(base[2] != moved[2]);
}
