#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "lvhopf/crosscheck.hpp"
#include "lvhopf/errors.hpp"
#include "lvhopf/spectral.hpp"

using namespace lvhopf;

namespace {

const double kPi = 3.141592653589793;

LinearCoeffs default_coeffs() {
    ModelParams p{4.0, 0.01};
    return linear_coeffs(p, compute_equilibrium(p));
}

// frozen from the default model; regression anchors, not derivations
const double kOmega0 = 0.44114628699616815;
const double kDiracECrit = 1.1974588786475335;
const double kDiracSlope = 0.13475812149730734;

} // namespace

TEST_CASE("characteristic function reduces to the closed cubic at E = 0") {
    LinearCoeffs c = default_coeffs();
    DelayKernel k = DelayKernel::dirac(0.0);
    Complex z(0.3, 0.7);
    Complex cubic = ((z + c.a1) * z + (c.a2 + c.a4)) * z + (c.a3 + c.a5);
    CHECK(std::abs(char_eval(c, k, z) - cubic) < 1e-14);
}

TEST_CASE("characteristic derivatives match central differences") {
    LinearCoeffs c = default_coeffs();
    const DelayKernel ks[] = {DelayKernel::dirac(1.0), DelayKernel::erlang(2, 0.8),
                              DelayKernel::uniform(0.9)};
    const Complex z(0.1, 0.5);
    const double h = 1e-6;
    for (const DelayKernel& k : ks) {
        Complex dl = (char_eval(c, k, z + h) - char_eval(c, k, z - h)) / (2.0 * h);
        CHECK(std::abs(char_dLambda(c, k, z) - dl) < 1e-8);
        Complex de = (char_eval(c, k.with_expectation(k.expectation + h), z) -
                      char_eval(c, k.with_expectation(k.expectation - h), z)) /
                     (2.0 * h);
        CHECK(std::abs(char_dE(c, k, z) - de) < 1e-8);
    }
}

TEST_CASE("omega0 solves the envelope identity and matches bisection") {
    LinearCoeffs c = default_coeffs();
    double w0 = omega0(c);
    CHECK(w0 == doctest::Approx(kOmega0).epsilon(1e-12));
    double env = c.a3 * c.a3 + c.a4 * c.a4 * w0 * w0;
    CHECK(G_of_omega(c, w0) == doctest::Approx(env).epsilon(1e-10));
    CHECK(std::abs(crosscheck::omega0_bisection(c) - w0) < 1e-10);
}

TEST_CASE("point-mass F sits exactly on the envelope") {
    LinearCoeffs c = default_coeffs();
    DelayKernel k = DelayKernel::dirac(1.7);
    for (double w : {0.1, 0.44, 1.3}) {
        double env = c.a3 * c.a3 + c.a4 * c.a4 * w * w;
        CHECK(F_of_omega(c, k, w) == doctest::Approx(env).epsilon(1e-12));
    }
    CHECK(G_of_omega(c, 0.0) == doctest::Approx(c.a5 * c.a5).epsilon(1e-15));
}

TEST_CASE("omega1 is a crossing frequency and saturates for point masses") {
    LinearCoeffs c = default_coeffs();
    CHECK(std::abs(omega1(c, DelayKernel::dirac(1.0)) - omega0(c)) < 1e-8);

    for (const DelayKernel& k : {DelayKernel::erlang(1, 1.0), DelayKernel::uniform(1.0)}) {
        double w1 = omega1(c, k);
        CHECK(w1 > 0.0);
        CHECK(w1 <= omega0(c) * (1.0 + 1e-12));
        CHECK(F_of_omega(c, k, w1) == doctest::Approx(G_of_omega(c, w1)).epsilon(1e-9));
    }
}

TEST_CASE("crossing moments solve the real and imaginary part system") {
    LinearCoeffs c = default_coeffs();
    double w = 0.9 * omega0(c);
    double C = cos_moment_at_crossing(c, w);
    double S = sin_moment_at_crossing(c, w);
    CHECK(c.a3 * C + c.a4 * w * S ==
          doctest::Approx(c.a1 * w * w - c.a5).epsilon(1e-12));
    CHECK(c.a4 * w * C - c.a3 * S ==
          doctest::Approx(w * w * w - c.a2 * w).epsilon(1e-12));
}

TEST_CASE("tangency constant reproduces the hard-coded 2.2764") {
    double ct = c_tangency();
    CHECK(std::abs(ct - 2.2764) < 5e-4);
    // x* is the tangency abscissa; c = pi sin x*
    double x = 2.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (x + hi);
        (std::cos(mid) + mid * std::sin(mid) - 1.0 > 0.0 ? x : hi) = mid;
    }
    CHECK(ct == doctest::Approx(kPi * std::sin(0.5 * (x + hi))).epsilon(1e-10));
}

TEST_CASE("expectation lower bound has the stated closed form") {
    LinearCoeffs c = default_coeffs();
    double w = omega0(c);
    double C = cos_moment_at_crossing(c, w);
    CHECK(E1_lower_bound(c, w) ==
          doctest::Approx(kPi * (1.0 - C) / (2.2764 * w)).epsilon(1e-14));
}

TEST_CASE("rectangle counts match the polynomial oracle for rational kernels") {
    LinearCoeffs c = default_coeffs();
    for (int k = 1; k <= 3; ++k) {
        DelayKernel kernel = DelayKernel::erlang(k, 1.0);
        auto roots = crosscheck::poly_roots(crosscheck::erlang_reduction_coeffs(c, k, 1.0));
        const Rect rects[] = {
            {-3.7, 1.0, -0.05, 1.8},  // scrapes past the transform pole
            {-2.3, 0.4, -1.0, 1.0},
            {-0.5, 0.6, 0.2, 2.0},
        };
        for (const Rect& r : rects) {
            int expected = 0;
            for (Complex z : roots)
                if (r.re_lo < z.real() && z.real() < r.re_hi && r.im_lo < z.imag() &&
                    z.imag() < r.im_hi)
                    ++expected;
            CHECK(count_roots_in_rectangle(c, kernel, r) == expected);
        }
    }
}

TEST_CASE("counting still succeeds with a root pinned on the boundary") {
    LinearCoeffs c = default_coeffs();
    DelayKernel k = DelayKernel::dirac(1.0);
    CharRoot lead = rightmost_root(c, k);
    // right edge through the root; the outward nudge must absorb it
    Rect r{lead.lambda.real() - 0.3, lead.lambda.real(), 0.2, 1.0};
    CHECK(count_roots_in_rectangle(c, k, r) == 1);
}

TEST_CASE("empty and populated windows count correctly for point masses") {
    LinearCoeffs c = default_coeffs();
    DelayKernel k = DelayKernel::dirac(1.0);
    CHECK(count_roots_in_rectangle(c, k, {-0.06, 0.05, 0.4, 0.5}) == 1);
    CHECK(count_roots_in_rectangle(c, k, {0.2, 0.9, 0.1, 0.9}) == 0);
}

TEST_CASE("rightmost root at E = 0 equals the Jacobian eigenvalue") {
    ModelParams p{4.0, 0.01};
    Equilibrium eq = compute_equilibrium(p);
    LinearCoeffs c = linear_coeffs(p, eq);
    CharRoot root = rightmost_root(c, DelayKernel::uniform(0.0));
    Complex oracle = crosscheck::rightmost_of(crosscheck::jacobian_eigenvalues(p, eq));
    CHECK(std::abs(root.lambda - oracle) < 1e-10);
    CHECK(root.residual < 1e-10);
}

TEST_CASE("rightmost root for rational kernels matches the reduction") {
    LinearCoeffs c = default_coeffs();
    for (int k = 1; k <= 3; ++k) {
        DelayKernel kernel = DelayKernel::erlang(k, 0.5);
        CharRoot root = rightmost_root(c, kernel);
        auto roots = crosscheck::poly_roots(crosscheck::erlang_reduction_coeffs(c, k, 0.5));
        CHECK(std::abs(root.lambda - crosscheck::rightmost_of(roots)) < 1e-8);
        CHECK(root.lambda.imag() >= 0.0);
    }
}

TEST_CASE("rightmost root regression at the default point-mass kernel") {
    LinearCoeffs c = default_coeffs();
    CharRoot root = rightmost_root(c, DelayKernel::dirac(1.0));
    CHECK(root.lambda.real() == doctest::Approx(-0.028612797146180341).epsilon(1e-9));
    CHECK(root.lambda.imag() == doctest::Approx(0.45103854092809958).epsilon(1e-9));
}

TEST_CASE("critical expectation for point masses has a closed-form answer") {
    LinearCoeffs c = default_coeffs();
    HopfPoint hp = critical_expectation(c, KernelFamily::Dirac);

    double w = omega0(c);
    double C = cos_moment_at_crossing(c, w);
    double S = sin_moment_at_crossing(c, w);
    double theta = std::atan2(S, C);
    if (theta <= 0.0) theta += 2.0 * kPi;
    CHECK(hp.E_crit == doctest::Approx(theta / w).epsilon(1e-9));
    CHECK(hp.omega_crit == doctest::Approx(w).epsilon(1e-9));
    CHECK(hp.E_crit == doctest::Approx(kDiracECrit).epsilon(1e-10));
    CHECK(hp.transversal_ok);
    CHECK(hp.transversal_slope == doctest::Approx(kDiracSlope).epsilon(1e-8));

    // crossing pair is a characteristic root
    Complex at_crossing =
        char_eval(c, DelayKernel::dirac(hp.E_crit), Complex(0.0, hp.omega_crit));
    CHECK(std::abs(at_crossing) < 1e-8);
}

TEST_CASE("critical expectation for rational kernels lands on the axis") {
    LinearCoeffs c = default_coeffs();
    for (int k : {1, 2, 3}) {
        HopfPoint hp = critical_expectation(c, KernelFamily::Erlang, k);
        auto roots =
            crosscheck::poly_roots(crosscheck::erlang_reduction_coeffs(c, k, hp.E_crit));
        Complex lead = crosscheck::rightmost_of(roots);
        CHECK(std::abs(lead.real()) < 1e-7);
        CHECK(lead.imag() == doctest::Approx(hp.omega_crit).epsilon(1e-6));
        CHECK(hp.transversal_ok);
    }
}

TEST_CASE("transversality formula agrees with the crossing speed") {
    LinearCoeffs c = default_coeffs();
    HopfPoint hp = critical_expectation(c, KernelFamily::Dirac);
    Complex speed = transversality(c, DelayKernel::dirac(hp.E_crit),
                                   Complex(0.0, hp.omega_crit));
    CHECK(speed.real() == doctest::Approx(hp.transversal_slope).epsilon(1e-10));
    CHECK(speed.real() > 0.0);
}

TEST_CASE("a low scan ceiling reports NoCrossingFound with the ceiling") {
    LinearCoeffs c = default_coeffs();
    try {
        critical_expectation(c, KernelFamily::Dirac, 1, 0.5);
        FAIL("expected NoCrossingFound");
    } catch (const NoCrossingFound& e) {
        CHECK(e.scan_ceiling == 0.5);
        CHECK(std::string(e.what()).size() > 0);
    }
}

TEST_CASE("proof curve bundle is consistent with its parts") {
    LinearCoeffs c = default_coeffs();
    DelayKernel k = DelayKernel::erlang(2, 1.0);
    ProofCurves pc = proof_curves(c, k);
    CHECK(pc.omega0 == omega0(c));
    CHECK(pc.omega1 == omega1(c, k));
    CHECK(pc.E1_bound == E1_lower_bound(c, pc.omega1));
    CHECK(pc.c_constant == 2.2764);
}
