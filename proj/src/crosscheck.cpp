#include "lvhopf/crosscheck.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lvhopf/errors.hpp"

namespace lvhopf::crosscheck {

std::vector<Complex> poly_roots(const std::vector<double>& coeffs) {
    int n = int(coeffs.size()) - 1;
    while (n > 0 && coeffs[std::size_t(n)] == 0.0) --n;
    if (n < 1) throw std::invalid_argument("polynomial must have degree >= 1");
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    double lead = coeffs[std::size_t(n)];
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[std::size_t(i)] / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) roots[std::size_t(i)] = solver.eigenvalues()(i);
    return roots;
}

std::vector<double> erlang_reduction_coeffs(const LinearCoeffs& c, int shape,
                                            double expectation) {
    // binomial expansion of (1 + (E/k) lambda)^k
    std::vector<double> factor(std::size_t(shape) + 1);
    double ratio = expectation / double(shape);
    factor[0] = 1.0;
    for (int j = 1; j <= shape; ++j)
        factor[std::size_t(j)] =
            factor[std::size_t(j - 1)] * ratio * double(shape - j + 1) / double(j);

    const double cubic[4] = {c.a5, c.a2, c.a1, 1.0};
    std::vector<double> out(std::size_t(shape) + 4, 0.0);
    for (int j = 0; j <= shape; ++j)
        for (int i = 0; i < 4; ++i)
            out[std::size_t(j + i)] += factor[std::size_t(j)] * cubic[i];
    out[0] += c.a3;
    out[1] += c.a4;
    return out;
}

std::vector<Complex> jacobian_eigenvalues(const ModelParams& params,
                                          const Equilibrium& eq) {
    Mat3 j = jacobian_no_delay(params, eq);
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = j[std::size_t(r)][std::size_t(c)];
    Eigen::EigenSolver<Eigen::Matrix3d> solver(m, false);
    std::vector<Complex> ev(3);
    for (int i = 0; i < 3; ++i) ev[std::size_t(i)] = solver.eigenvalues()(i);
    return ev;
}

Complex rightmost_of(const std::vector<Complex>& roots) {
    if (roots.empty()) throw std::invalid_argument("empty root list");
    Complex best = roots[0];
    for (const Complex& r : roots) {
        if (r.real() > best.real() + 1e-10 ||
            (std::abs(r.real() - best.real()) <= 1e-10 &&
             std::abs(r.imag()) < std::abs(best.imag())))
            best = r;
    }
    return best.imag() < 0.0 ? std::conj(best) : best;
}

double omega0_bisection(const LinearCoeffs& c) {
    double p = c.a1 * c.a1 - 2.0 * c.a2;
    double q = c.a2 * c.a2 - 2.0 * c.a1 * c.a5 - c.a4 * c.a4;
    double r = c.a5 * c.a5 - c.a3 * c.a3;
    auto f = [&](double z) { return ((z + p) * z + q) * z + r; };
    if (f(0.0) >= 0.0)
        throw NoPositiveRoot("cubic nonnegative at zero; no bracketing interval");

    // the largest root lies right of the larger critical point, so start
    // the bracket there; with no usable critical point the cubic crosses
    // zero exactly once and [0, hi] already isolates it
    double lo = 0.0;
    double disc = p * p - 3.0 * q;
    if (disc > 0.0) {
        double zc = (-p + std::sqrt(disc)) / 3.0;
        if (zc > 0.0 && f(zc) <= 0.0) lo = zc;
    }
    double hi = 1.0 + std::max({std::abs(p), std::abs(q), std::abs(r)});
    while (f(hi) <= 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(hi, 1.0); ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? hi : lo) = mid;
    }
    return std::sqrt(0.5 * (lo + hi));
}

double cosine_moment_quadrature(const DelayKernel& kernel, double omega) {
    double t_max = support_bound(kernel, 1e-14);
    const int n = 40000; // even
    double h = t_max / n;
    auto f = [&](double t) { return density(kernel, t) * std::cos(omega * t); };
    double sum = f(0.0) + f(t_max);
    for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

} // namespace lvhopf::crosscheck
