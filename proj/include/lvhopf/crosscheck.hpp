#pragma once

#include <vector>

#include "lvhopf/kernels.hpp"
#include "lvhopf/model.hpp"
#include "lvhopf/types.hpp"

// Independent reference computations used to cross-check the primary
// algorithms: companion-matrix root solves, eigenvalue stability, and the
// rational reduction of the Erlang characteristic function. These
// deliberately take different routes than the production code paths.

namespace lvhopf::crosscheck {

/// All complex roots of c[0] + c[1] x + ... + c[n] x^n (companion matrix).
std::vector<Complex> poly_roots(const std::vector<double>& coeffs);

/// Coefficients (ascending) of (1 + lambda E/k)^k (lambda^3 + a1 lambda^2
/// + a2 lambda + a5) + a3 + a4 lambda, the polynomial whose roots are
/// exactly the characteristic roots under an Erlang(k, E) kernel.
std::vector<double> erlang_reduction_coeffs(const LinearCoeffs& c, int shape,
                                            double expectation);

/// Eigenvalues of the no-delay Jacobian.
std::vector<Complex> jacobian_eigenvalues(const ModelParams& params,
                                          const Equilibrium& eq);

/// The root with maximal real part from a root list; ties prefer smaller
/// |Im|; returns the Im >= 0 member.
Complex rightmost_of(const std::vector<Complex>& roots);

/// omega0 by sign-change bisection on the cubic in z = omega^2 instead of
/// the closed-form solve.
double omega0_bisection(const LinearCoeffs& c);

/// Integral of density * cos(omega tau) by composite Simpson quadrature
/// over the kernel support (reference for cosine_moment).
double cosine_moment_quadrature(const DelayKernel& kernel, double omega);

} // namespace lvhopf::crosscheck
