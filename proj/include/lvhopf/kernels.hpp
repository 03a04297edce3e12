#pragma once

#include <vector>

#include "lvhopf/types.hpp"

namespace lvhopf {

enum class KernelFamily {
    Dirac,  ///< point mass at tau = E
    Erlang, ///< shape k, rate k/E (mean exactly E)
    Uniform ///< constant 1/(2E) on [0, 2E]
};

/// A delay distribution with expectation E. E = 0 denotes the degenerate
/// point mass at zero for every family (all transforms collapse to 1).
struct DelayKernel {
    KernelFamily family = KernelFamily::Dirac;
    double expectation = 0.0;
    int shape = 1; ///< Erlang shape k >= 1; ignored by the other families

    static DelayKernel dirac(double e) { return {KernelFamily::Dirac, e, 1}; }
    static DelayKernel erlang(int k, double e) { return {KernelFamily::Erlang, e, k}; }
    static DelayKernel uniform(double e) { return {KernelFamily::Uniform, e, 1}; }

    DelayKernel with_expectation(double e) const { return {family, e, shape}; }
};

/// Density f_E(tau) of the kernel. Dirac has no density; calling this on a
/// Dirac kernel throws DiracNotDiscretizable.
double density(const DelayKernel& kernel, double tau);

/// Laplace transform of the density, \int_0^inf f_E(t) e^(-lambda t) dt.
/// Closed forms: Dirac e^(-lambda E), Erlang (1 + lambda E/k)^(-k),
/// Uniform (1 - e^(-2 lambda E)) / (2 lambda E). Throws PoleReached at the
/// Erlang pole 1 + lambda E/k = 0.
Complex transform(const DelayKernel& kernel, Complex lambda);

/// Analytic d/dE of transform() at fixed lambda.
Complex transform_dE(const DelayKernel& kernel, Complex lambda);

/// Analytic d/dlambda of transform(); equals minus the transform of
/// tau * f_E(tau).
Complex transform_dLambda(const DelayKernel& kernel, Complex lambda);

/// \int f_E(tau) cos(omega tau) dtau = Re transform(i omega).
double cosine_moment(const DelayKernel& kernel, double omega);

/// T such that the kernel mass beyond T is at most epsilon. Exact for
/// Dirac (E) and Uniform (2E); for Erlang, solved on the survival
/// function by bisection.
double support_bound(const DelayKernel& kernel, double epsilon);

/// Trapezoid weights w_j ~ f(j dt) dt on [0, support_bound(epsilon)],
/// renormalized so that the weights sum to 1 exactly. Node j corresponds
/// to lag j * dt. Throws DiracNotDiscretizable for point masses.
std::vector<double> quadrature_weights(const DelayKernel& kernel, double dt,
                                       double epsilon);

} // namespace lvhopf
