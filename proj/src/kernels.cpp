#include "lvhopf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lvhopf/errors.hpp"

namespace lvhopf {

namespace {

// (1 - e^(-u))/u with the removable singularity at u = 0. The direct
// quotient loses digits for small |u|, so switch to the power series
// sum (-u)^n/(n+1)! there.
Complex expm1_ratio(Complex u) {
    if (std::abs(u) < 0.5) {
        Complex sum = 1.0;
        Complex term = 1.0;
        for (int n = 1; n < 40; ++n) {
            term *= -u / double(n + 1);
            sum += term;
            if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
        }
        return sum;
    }
    return (1.0 - std::exp(-u)) / u;
}

// d/du of expm1_ratio: (e^(-u)(1+u) - 1)/u^2, series near 0.
Complex expm1_ratio_du(Complex u) {
    if (std::abs(u) < 0.5) {
        // sum over n>=1 of (-1)^n n u^(n-1)/(n+1)!
        Complex sum = -0.5;
        Complex term = -0.5;
        for (int n = 1; n < 40; ++n) {
            term *= -u * double(n + 1) / (double(n) * double(n + 2));
            sum += term;
            if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
        }
        return sum;
    }
    return (std::exp(-u) * (1.0 + u) - 1.0) / (u * u);
}

// w^(-k) by repeated multiplication; k is a small positive integer.
Complex inv_pow(Complex w, int k) {
    Complex inv = 1.0 / w;
    Complex r = 1.0;
    for (int i = 0; i < k; ++i) r *= inv;
    return r;
}

double log_factorial(int n) {
    return std::lgamma(double(n) + 1.0);
}

// Erlang survival function P(tau > t) = sum_{j<k} e^(-rt)(rt)^j/j!.
double erlang_survival(int k, double rate, double t) {
    if (t <= 0.0) return 1.0;
    double rt = rate * t;
    double sum = 0.0;
    for (int j = 0; j < k; ++j) {
        sum += std::exp(-rt + double(j) * std::log(rt) - log_factorial(j));
    }
    return std::min(sum, 1.0);
}

} // namespace

double density(const DelayKernel& kernel, double tau) {
    if (kernel.family == KernelFamily::Dirac || kernel.expectation == 0.0)
        throw DiracNotDiscretizable("point mass has no density");
    double e = kernel.expectation;
    switch (kernel.family) {
    case KernelFamily::Erlang: {
        int k = kernel.shape;
        double rate = double(k) / e;
        if (tau < 0.0) return 0.0;
        if (tau == 0.0) return k == 1 ? rate : 0.0;
        // log-space evaluation keeps large k and large tau finite
        double lg = double(k) * std::log(rate) + double(k - 1) * std::log(tau) -
                    rate * tau - log_factorial(k - 1);
        return std::exp(lg);
    }
    case KernelFamily::Uniform:
        return (tau >= 0.0 && tau <= 2.0 * e) ? 1.0 / (2.0 * e) : 0.0;
    default:
        throw DiracNotDiscretizable("point mass has no density");
    }
}

Complex transform(const DelayKernel& kernel, Complex lambda) {
    double e = kernel.expectation;
    if (e == 0.0) return 1.0;
    switch (kernel.family) {
    case KernelFamily::Dirac:
        return std::exp(-lambda * e);
    case KernelFamily::Erlang: {
        Complex w = 1.0 + lambda * e / double(kernel.shape);
        if (std::abs(w) < 1e-14)
            throw PoleReached("Erlang transform pole at lambda = -k/E");
        return inv_pow(w, kernel.shape);
    }
    case KernelFamily::Uniform:
        return expm1_ratio(2.0 * lambda * e);
    }
    return 1.0; // unreachable
}

Complex transform_dE(const DelayKernel& kernel, Complex lambda) {
    double e = kernel.expectation;
    if (e == 0.0) return -lambda; // shared limit of all three families
    switch (kernel.family) {
    case KernelFamily::Dirac:
        return -lambda * std::exp(-lambda * e);
    case KernelFamily::Erlang: {
        Complex w = 1.0 + lambda * e / double(kernel.shape);
        if (std::abs(w) < 1e-14)
            throw PoleReached("Erlang transform pole at lambda = -k/E");
        return -lambda * inv_pow(w, kernel.shape + 1);
    }
    case KernelFamily::Uniform:
        return 2.0 * lambda * expm1_ratio_du(2.0 * lambda * e);
    }
    return 0.0; // unreachable
}

Complex transform_dLambda(const DelayKernel& kernel, Complex lambda) {
    double e = kernel.expectation;
    if (e == 0.0) return 0.0;
    switch (kernel.family) {
    case KernelFamily::Dirac:
        return -e * std::exp(-lambda * e);
    case KernelFamily::Erlang: {
        Complex w = 1.0 + lambda * e / double(kernel.shape);
        if (std::abs(w) < 1e-14)
            throw PoleReached("Erlang transform pole at lambda = -k/E");
        return -e * inv_pow(w, kernel.shape + 1);
    }
    case KernelFamily::Uniform:
        return 2.0 * e * expm1_ratio_du(2.0 * lambda * e);
    }
    return 0.0; // unreachable
}

double cosine_moment(const DelayKernel& kernel, double omega) {
    return transform(kernel, Complex(0.0, omega)).real();
}

double support_bound(const DelayKernel& kernel, double epsilon) {
    double e = kernel.expectation;
    switch (kernel.family) {
    case KernelFamily::Dirac:
        return e;
    case KernelFamily::Uniform:
        return 2.0 * e;
    case KernelFamily::Erlang: {
        if (e == 0.0) return 0.0;
        int k = kernel.shape;
        double rate = double(k) / e;
        double hi = e;
        while (erlang_survival(k, rate, hi) > epsilon) hi *= 2.0;
        double lo = hi * 0.5;
        for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
            double mid = 0.5 * (lo + hi);
            (erlang_survival(k, rate, mid) > epsilon ? lo : hi) = mid;
        }
        return hi;
    }
    }
    return e; // unreachable
}

std::vector<double> quadrature_weights(const DelayKernel& kernel, double dt,
                                       double epsilon) {
    if (kernel.family == KernelFamily::Dirac || kernel.expectation == 0.0)
        throw DiracNotDiscretizable(
            "Dirac kernels use direct history lookup, not quadrature");
    double t_max = support_bound(kernel, epsilon);
    auto n = std::size_t(std::ceil(t_max / dt));
    if (n < 2) n = 2;
    std::vector<double> w(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        double c = (j == 0 || j == n) ? 0.5 : 1.0;
        w[j] = c * density(kernel, double(j) * dt) * dt;
    }
    double sum = 0.0;
    for (double v : w) sum += v;
    if (sum <= 0.0)
        throw StepTooCoarse("quadrature grid misses the kernel support");
    for (double& v : w) v /= sum;
    // push the rounding residual into the largest weight so the sum is 1
    double resid = 1.0;
    for (double v : w) resid -= v;
    auto it = std::max_element(w.begin(), w.end());
    *it += resid;
    return w;
}

} // namespace lvhopf
