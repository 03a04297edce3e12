#pragma once

#include <string>
#include <vector>

#include "lvhopf/types.hpp"

namespace lvhopf {

/// The two free scalars of the harvested one-predator--two-prey model.
/// The predation coefficients are tied to `a` (a13 = a, a31 = a/2); all
/// remaining rates are fixed at the values of the reference model.
struct ModelParams {
    double a = 4.0;  ///< dimensionless predation coefficient, feasible for a > 2 + sqrt(2)
    double H = 0.01; ///< harvest rate on the predator, H >= 0
};

/// Positive interior equilibrium (x1*, x2*, x3*).
struct Equilibrium {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    Vec3 as_vec() const { return {x1, x2, x3}; }
};

/// Coefficients a1..a5 of the characteristic equation of the linearization.
struct LinearCoeffs {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;
    double a5 = 0.0;
};

/// One named slack value in a feasibility report.
struct Margin {
    std::string name;
    double value = 0.0;
};

/// Outcome of the parameter feasibility analysis. `feasible` requires both
/// the coefficient bound a > 2 + sqrt(2) and strict positivity of the
/// computed equilibrium; the Routh-Hurwitz flag describes the no-delay
/// linearization separately.
struct FeasibilityReport {
    bool feasible = false;
    bool a_ok = false;
    bool positivity_ok = false;
    double h_threshold = 0.0; ///< largest H keeping x2* > 0, from x2*(H) = 0
    bool routh_hurwitz_ok = false;
    std::vector<Margin> margins;
};

/// Routh-Hurwitz verdict for the cubic lambda^3 + a1 lambda^2
/// + (a2+a4) lambda + (a3+a5), with the slack of each inequality.
struct RouthHurwitzResult {
    bool ok = false;
    std::vector<Margin> margins;
};

/// Interior equilibrium of the model: x3* is the positive root of
/// (a-2)(2a-1) x3^2 - x3 - 2H = 0, with x1* = 2(a-1) x3* and
/// x2* = 1 - (3a-2) x3*. Throws InfeasibleParams when a <= 2 + sqrt(2),
/// H < 0, or no root yields strictly positive components.
Equilibrium compute_equilibrium(const ModelParams& params);

/// Feasibility analysis; never throws, always returns a report.
FeasibilityReport check_feasibility(const ModelParams& params);

/// Right-hand side of the no-delay system.
Vec3 rhs_no_delay(const ModelParams& params, const Vec3& state);

/// Right-hand side of the distributed-delay system. `conv1` and `conv2`
/// are the kernel-convolved histories of x1 and x2 supplied by the caller;
/// only the predator equation sees them.
Vec3 rhs_delayed(const ModelParams& params, const Vec3& state, double conv1,
                 double conv2);

/// Jacobian of the no-delay system at the interior equilibrium.
Mat3 jacobian_no_delay(const ModelParams& params, const Equilibrium& eq);

/// Characteristic-equation coefficients a1..a5 at the equilibrium.
LinearCoeffs linear_coeffs(const ModelParams& params, const Equilibrium& eq);

/// Routh-Hurwitz criterion for the no-delay cubic. Note the sign of the
/// middle coefficient: stability requires a2 + a4 > 0 together with
/// a1 > 0, a3 + a5 > 0 and a1(a2+a4) > a3+a5.
RouthHurwitzResult routh_hurwitz(const LinearCoeffs& coeffs);

/// Largest H for which x2*(H) > 0 at this `a` (reported threshold,
/// derived by solving x2*(H) = 0).
double harvest_threshold(double a);

} // namespace lvhopf
