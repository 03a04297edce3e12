#pragma once

#include <optional>

#include "lvhopf/kernels.hpp"
#include "lvhopf/model.hpp"
#include "lvhopf/types.hpp"

namespace lvhopf {

/// An accepted characteristic root; residual is |char_eval| at lambda.
struct CharRoot {
    Complex lambda;
    double residual = 0.0;
};

/// Stability-loss point in the expectation parameter.
struct HopfPoint {
    double E_crit = 0.0;
    double omega_crit = 0.0;       ///< crossing frequency, > 0
    double transversal_slope = 0.0; ///< d Re(lambda)/dE at the crossing
    bool transversal_ok = false;
};

/// Analytic quantities from the imaginary-axis crossing analysis.
struct ProofCurves {
    double omega0 = 0.0;   ///< largest frequency on the envelope, brackets crossings
    double omega1 = 0.0;   ///< smallest frequency with F = G, in (0, omega0]
    double E1_bound = 0.0; ///< analytic lower bound on the critical expectation
    double c_constant = 2.2764;
};

/// Axis-aligned search rectangle in the complex plane.
struct Rect {
    double re_lo, re_hi, im_lo, im_hi;
};

/// Characteristic function: lambda^3 + a1 lambda^2 + a2 lambda
/// + (a3 + a4 lambda) K(lambda) + a5, K the kernel transform.
Complex char_eval(const LinearCoeffs& c, const DelayKernel& k, Complex lambda);

/// d/dlambda of char_eval at fixed E.
Complex char_dLambda(const LinearCoeffs& c, const DelayKernel& k, Complex lambda);

/// d/dE of char_eval at fixed lambda: (a3 + a4 lambda) * transform_dE.
Complex char_dE(const LinearCoeffs& c, const DelayKernel& k, Complex lambda);

/// F(w) = (a3^2 + a4^2 w^2) |K(iw)|^2: squared modulus of the delayed part
/// of the characteristic function on the imaginary axis.
double F_of_omega(const LinearCoeffs& c, const DelayKernel& k, double omega);

/// G(w) = (a1 w^2 - a5)^2 + (w^3 - a2 w)^2: squared modulus of the
/// undelayed part.
double G_of_omega(const LinearCoeffs& c, double omega);

/// Largest frequency at which G meets the envelope a3^2 + a4^2 w^2:
/// sqrt of the largest positive root of
/// z^3 + (a1^2-2a2) z^2 + (a2^2-2a1a5-a4^2) z + (a5^2-a3^2).
double omega0(const LinearCoeffs& c);

/// Smallest w in (0, omega0] with F(w) = G(w) for the given kernel.
double omega1(const LinearCoeffs& c, const DelayKernel& k);

/// Cosine moment C = int f cos(w tau) implied by a purely imaginary root
/// i*w: the unique solution of the 2x2 real/imaginary-part system.
double cos_moment_at_crossing(const LinearCoeffs& c, double omega);

/// Paired sine moment from the same system.
double sin_moment_at_crossing(const LinearCoeffs& c, double omega);

/// pi (1 - C)/(c w1) with C = cos_moment_at_crossing: every crossing
/// expectation is at least this large.
double E1_lower_bound(const LinearCoeffs& c, double omega1);

/// Self-check of the hard-coded constant 2.2764: solves the tangency
/// problem sup{c : cos x = 1 - c x / pi has a root x > 0}.
double c_tangency();

/// Number of characteristic roots strictly inside the rectangle, by the
/// argument principle with adaptive phase tracking. Erlang kernels are
/// counted on the denominator-cleared polynomial form, so no transform
/// poles arise. Boundaries carrying a root are nudged outward a few times
/// before BoundaryRoot is thrown.
int count_roots_in_rectangle(const LinearCoeffs& c, const DelayKernel& k,
                             const Rect& rect);

/// Root with maximal real part inside the given window, or nullopt when
/// the window holds none. Im >= 0 representative of a conjugate pair.
std::optional<CharRoot> rightmost_root_in(const LinearCoeffs& c,
                                          const DelayKernel& k, Rect window);

/// Root with maximal real part in the standard search window
/// Re in [-5 a1 - 1, max(1, omega0)], Im in [~0, 4 omega0], widened on
/// boundary contact. Returns the Im >= 0 member of a conjugate pair.
CharRoot rightmost_root(const LinearCoeffs& c, const DelayKernel& k);

/// dlambda/dE = -char_dE / char_dLambda at the given root estimate.
Complex transversality(const LinearCoeffs& c, const DelayKernel& k,
                       Complex lambda);

/// Smallest E > 0 at which the rightmost root reaches the imaginary axis:
/// geometric scan from E = 0.01 with doubling, bisection to 1e-8, then a
/// 2-d Newton polish in (omega, E). e_max = 0 selects the default ceiling
/// of 1000 * E1_lower_bound(c, omega0(c)).
HopfPoint critical_expectation(const LinearCoeffs& c, KernelFamily family,
                               int shape = 1, double e_max = 0.0);

/// Bundle of omega0, omega1, and the expectation lower bound.
ProofCurves proof_curves(const LinearCoeffs& c, const DelayKernel& k);

} // namespace lvhopf
