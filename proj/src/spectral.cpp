#include "lvhopf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "lvhopf/errors.hpp"

namespace lvhopf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCConstant = 2.2764;

// Signals a root or pole too close to the current contour; the counting
// wrapper reacts by nudging the rectangle outward.
struct BoundaryEvent {};

double sq(double x) { return x * x; }

} // namespace

Complex char_eval(const LinearCoeffs& c, const DelayKernel& k, Complex lambda) {
    Complex kt = transform(k, lambda);
    return ((lambda + c.a1) * lambda + c.a2) * lambda + (c.a3 + c.a4 * lambda) * kt +
           c.a5;
}

Complex char_dLambda(const LinearCoeffs& c, const DelayKernel& k, Complex lambda) {
    return (3.0 * lambda + 2.0 * c.a1) * lambda + c.a2 +
           (c.a3 + c.a4 * lambda) * transform_dLambda(k, lambda) +
           c.a4 * transform(k, lambda);
}

Complex char_dE(const LinearCoeffs& c, const DelayKernel& k, Complex lambda) {
    return (c.a3 + c.a4 * lambda) * transform_dE(k, lambda);
}

double F_of_omega(const LinearCoeffs& c, const DelayKernel& k, double omega) {
    double mod2 = std::norm(transform(k, Complex(0.0, omega)));
    return (sq(c.a3) + sq(c.a4) * sq(omega)) * mod2;
}

double G_of_omega(const LinearCoeffs& c, double omega) {
    return sq(c.a1 * sq(omega) - c.a5) + sq(omega * (sq(omega) - c.a2));
}

namespace {

// Real roots of z^3 + p z^2 + q z + r via the depressed-cubic closed form,
// each polished by a few Newton steps on the original cubic.
std::vector<double> cubic_real_roots(double p, double q, double r) {
    double a = q - p * p / 3.0;
    double b = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    std::vector<double> roots;
    double disc = b * b / 4.0 + a * a * a / 27.0;
    if (disc > 0.0) {
        double s = std::sqrt(disc);
        double t = std::cbrt(-b / 2.0 + s) + std::cbrt(-b / 2.0 - s);
        roots.push_back(t - p / 3.0);
    } else if (a == 0.0) {
        roots.push_back(std::cbrt(-b) - p / 3.0);
    } else {
        double m = 2.0 * std::sqrt(-a / 3.0);
        double arg = std::clamp(3.0 * b / (a * m), -1.0, 1.0);
        double theta = std::acos(arg) / 3.0;
        for (int j = 0; j < 3; ++j)
            roots.push_back(m * std::cos(theta - 2.0 * kPi * j / 3.0) - p / 3.0);
    }
    auto f = [&](double z) { return ((z + p) * z + q) * z + r; };
    auto df = [&](double z) { return (3.0 * z + 2.0 * p) * z + q; };
    for (double& z : roots) {
        for (int i = 0; i < 4; ++i) {
            double d = df(z);
            if (std::abs(d) < 1e-300) break;
            z -= f(z) / d;
        }
    }
    return roots;
}

} // namespace

double omega0(const LinearCoeffs& c) {
    double p = sq(c.a1) - 2.0 * c.a2;
    double q = sq(c.a2) - 2.0 * c.a1 * c.a5 - sq(c.a4);
    double r = sq(c.a5) - sq(c.a3);
    if (r >= 0.0)
        throw NoPositiveRoot("a3^2 - a5^2 <= 0: no envelope intersection exists");
    double best = -1.0;
    for (double z : cubic_real_roots(p, q, r))
        if (z > 0.0) best = std::max(best, z);
    if (best <= 0.0)
        throw NoPositiveRoot("cubic in z = omega^2 has no positive real root");
    return std::sqrt(best);
}

double omega1(const LinearCoeffs& c, const DelayKernel& k) {
    double w0 = omega0(c);
    auto h = [&](double w) { return F_of_omega(c, k, w) - G_of_omega(c, w); };
    double h0 = sq(c.a3) - sq(c.a5); // exact value of F - G at omega = 0
    if (h0 <= 0.0)
        throw BracketNotFound("F(0) - G(0) = a3^2 - a5^2 is not positive");

    for (int n = 512; n <= (1 << 16); n *= 2) {
        double w_prev = 0.0, h_prev = h0;
        for (int i = 1; i <= n; ++i) {
            double w = w0 * double(i) / double(n);
            double hw = h(w);
            if (hw == 0.0) return w;
            if (h_prev > 0.0 && hw < 0.0) {
                double lo = w_prev, hi = w;
                while (hi - lo > 1e-10) {
                    double mid = 0.5 * (lo + hi);
                    (h(mid) > 0.0 ? lo : hi) = mid;
                }
                double w1 = 0.5 * (lo + hi);
                // secant polish for the F(w1) = G(w1) identity
                double wa = lo, wb = hi, ha = h(wa), hb = h(wb);
                for (int it = 0; it < 8 && ha != hb; ++it) {
                    double wn = wb - hb * (wb - wa) / (hb - ha);
                    if (!std::isfinite(wn) || wn <= 0.0 || wn > w0) break;
                    wa = wb; ha = hb;
                    wb = wn; hb = h(wn);
                    w1 = wn;
                }
                return w1;
            }
            w_prev = w; h_prev = hw;
        }
    }
    // saturating kernels meet the envelope exactly at omega0 with no sign
    // change; accept the endpoint when the defect there is at noise level
    double scale = std::max({std::abs(F_of_omega(c, k, w0)), G_of_omega(c, w0), 1e-30});
    if (std::abs(h(w0)) <= 1e-9 * scale) return w0;
    std::ostringstream os;
    os << "no sign change of F - G on (0, " << w0 << "]: H(0)=" << h0
       << ", H(omega0)=" << h(w0);
    throw BracketNotFound(os.str());
}

double cos_moment_at_crossing(const LinearCoeffs& c, double omega) {
    double den = sq(c.a3) + sq(c.a4) * sq(omega);
    if (den == 0.0)
        throw SingularSystem("a3^2 + a4^2 omega^2 vanishes");
    double r1 = c.a1 * sq(omega) - c.a5;
    double r2 = omega * (sq(omega) - c.a2);
    return (c.a3 * r1 + c.a4 * omega * r2) / den;
}

double sin_moment_at_crossing(const LinearCoeffs& c, double omega) {
    double den = sq(c.a3) + sq(c.a4) * sq(omega);
    if (den == 0.0)
        throw SingularSystem("a3^2 + a4^2 omega^2 vanishes");
    double r1 = c.a1 * sq(omega) - c.a5;
    double r2 = omega * (sq(omega) - c.a2);
    return (c.a4 * omega * r1 - c.a3 * r2) / den;
}

double E1_lower_bound(const LinearCoeffs& c, double omega1) {
    double C = cos_moment_at_crossing(c, omega1);
    return kPi * (1.0 - C) / (kCConstant * omega1);
}

double c_tangency() {
    // tangency of cos x and 1 - cx/pi: cos x + x sin x - 1 = 0, c = pi sin x
    auto g = [](double x) { return std::cos(x) + x * std::sin(x) - 1.0; };
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return kPi * std::sin(0.5 * (lo + hi));
}

namespace {

class ContourCounter {
public:
    ContourCounter(const LinearCoeffs& c, const DelayKernel& k) : c_(c), k_(k) {}

    // winding number of the pole-free characteristic form along the
    // rectangle boundary = number of enclosed roots
    int count(const Rect& r) const {
        Complex z1(r.re_lo, r.im_lo), z2(r.re_hi, r.im_lo);
        Complex z3(r.re_hi, r.im_hi), z4(r.re_lo, r.im_hi);
        for (int segments = 8; segments <= 64; segments *= 2) {
            double total = edge(z1, z2, segments) + edge(z2, z3, segments) +
                           edge(z3, z4, segments) + edge(z4, z1, segments);
            double w = total / (2.0 * kPi);
            long n = std::lround(w);
            if (std::abs(w - double(n)) < 0.05) {
                if (n < 0) throw BoundaryEvent{};
                return int(n);
            }
        }
        throw BoundaryEvent{}; // winding never settled near an integer
    }

private:
    // Erlang evaluation clears the rational denominator (1 + lambda E/k)^k
    // first: same zeros, no transform poles, so a pole skimming the contour
    // can never fold a silent 2 pi multiple into one tracked segment. The
    // cleared form gains a zero of its own at -k/E only when a3 E = a4 k
    // exactly, a parameter coincidence no caller's rectangle depends on.
    Complex eval(Complex z) const {
        Complex f;
        try {
            if (k_.family == KernelFamily::Erlang && k_.expectation > 0.0) {
                Complex w = 1.0 + z * (k_.expectation / double(k_.shape));
                Complex wk = 1.0;
                for (int i = 0; i < k_.shape; ++i) wk *= w;
                f = wk * (((z + c_.a1) * z + c_.a2) * z + c_.a5) + c_.a3 +
                    c_.a4 * z;
            } else {
                f = char_eval(c_, k_, z);
            }
        } catch (const PoleReached&) {
            throw BoundaryEvent{};
        }
        double m = std::abs(f);
        if (!std::isfinite(m))
            throw ConvergenceFailure("characteristic value overflowed on contour");
        if (m < 1e-12) throw BoundaryEvent{};
        return f;
    }

    double edge(Complex za, Complex zb, int segments) const {
        double total = 0.0;
        Complex prev_z = za, prev_f = eval(za);
        for (int i = 1; i <= segments; ++i) {
            Complex z = za + (zb - za) * (double(i) / segments);
            Complex f = eval(z);
            total += walk(prev_z, z, prev_f, f, 0);
            prev_z = z; prev_f = f;
        }
        return total;
    }

    double walk(Complex za, Complex zb, Complex fa, Complex fb, int depth) const {
        double dphi = std::arg(fb / fa);
        if (std::abs(dphi) < kPi / 2.0) return dphi;
        if (depth >= 48) throw BoundaryEvent{}; // phase pinned by a boundary root
        Complex zm = 0.5 * (za + zb);
        Complex fm = eval(zm);
        return walk(za, zm, fa, fm, depth + 1) + walk(zm, zb, fm, fb, depth + 1);
    }

    const LinearCoeffs& c_;
    const DelayKernel& k_;
};

} // namespace

int count_roots_in_rectangle(const LinearCoeffs& c, const DelayKernel& k,
                             const Rect& rect) {
    ContourCounter counter(c, k);
    double scale = std::max({1.0, rect.re_hi - rect.re_lo, rect.im_hi - rect.im_lo});
    double delta = 1e-9 * scale;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Rect r = rect;
        if (attempt > 0) {
            double d = delta * std::pow(4.0, attempt - 1);
            r.re_lo -= d; r.re_hi += d;
            r.im_lo -= d; r.im_hi += d;
        }
        try {
            return counter.count(r);
        } catch (const BoundaryEvent&) {
            // root or pole pinned on this contour; retry slightly larger
        }
    }
    std::ostringstream os;
    os << "root on rectangle boundary persists after nudging: Re [" << rect.re_lo
       << ", " << rect.re_hi << "], Im [" << rect.im_lo << ", " << rect.im_hi << "]";
    throw BoundaryRoot(os.str());
}

namespace {

// Newton iteration from z0; returns the polished root when it converges
// with small residual, nullopt otherwise.
std::optional<CharRoot> newton_root(const LinearCoeffs& c, const DelayKernel& k,
                                    Complex z0) {
    Complex z = z0;
    for (int it = 0; it < 80; ++it) {
        Complex f, fp;
        try {
            f = char_eval(c, k, z);
            fp = char_dLambda(c, k, z);
        } catch (const PoleReached&) {
            return std::nullopt;
        }
        if (std::abs(fp) < 1e-300) return std::nullopt;
        Complex dz = f / fp;
        z -= dz;
        if (std::abs(dz) < 1e-14 * (1.0 + std::abs(z))) break;
    }
    // a real-axis root keeps cleaner reporting with the dust removed
    if (std::abs(z.imag()) < 1e-10) {
        Complex zr(z.real(), 0.0);
        try {
            if (std::abs(char_eval(c, k, zr)) <= std::abs(char_eval(c, k, z)))
                z = zr;
        } catch (const PoleReached&) {
        }
    }
    double resid = std::abs(char_eval(c, k, z));
    if (!std::isfinite(resid) || resid > 1e-10) return std::nullopt;
    return CharRoot{z, resid};
}

} // namespace

std::optional<CharRoot> rightmost_root_in(const LinearCoeffs& c,
                                          const DelayKernel& k, Rect window) {
    auto count = [&](const Rect& r) { return count_roots_in_rectangle(c, k, r); };
    if (count(window) == 0) return std::nullopt;

    // narrow a vertical strip onto the rightmost root
    double rl = window.re_lo, rh = window.re_hi;
    while (rh - rl > 1e-3) {
        double mid = 0.5 * (rl + rh);
        if (count({mid, rh, window.im_lo, window.im_hi}) >= 1)
            rl = mid;
        else
            rh = mid;
    }
    Rect strip{rl - 1e-4, rh + 1e-4, window.im_lo, window.im_hi};
    int n_strip = count(strip);
    if (n_strip == 0) return std::nullopt; // lost to nudging; caller widens

    // then narrow vertically, preferring the half nearer the real axis
    double il = strip.im_lo, ih = strip.im_hi;
    int n_cur = n_strip;
    while (ih - il > 1e-3) {
        double mid = 0.5 * (il + ih);
        int nl = count({strip.re_lo, strip.re_hi, il, mid});
        int nu = std::max(0, n_cur - nl);
        bool take_lower;
        if (nl >= 1 && nu >= 1) {
            take_lower = std::abs(0.5 * (il + mid)) <= std::abs(0.5 * (mid + ih));
        } else if (nl >= 1) {
            take_lower = true;
        } else if (nu >= 1) {
            take_lower = false;
        } else {
            break; // nudging noise; polish from the current cell
        }
        if (take_lower) { ih = mid; n_cur = nl; }
        else { il = mid; n_cur = nu; }
    }

    Complex center(0.5 * (strip.re_lo + strip.re_hi), 0.5 * (il + ih));
    Complex starts[5] = {
        center,
        center + Complex(0.25 * (strip.re_hi - strip.re_lo), 0.0),
        center - Complex(0.25 * (strip.re_hi - strip.re_lo), 0.0),
        center + Complex(0.0, 0.25 * (ih - il)),
        center - Complex(0.0, 0.25 * (ih - il)),
    };
    for (const Complex& z0 : starts) {
        if (auto root = newton_root(c, k, z0)) {
            if (root->lambda.imag() < 0.0)
                root->lambda = std::conj(root->lambda); // report the upper member
            return root;
        }
    }
    std::ostringstream os;
    os << "Newton failed to polish the root near (" << center.real() << ", "
       << center.imag() << "), strip Re [" << strip.re_lo << ", " << strip.re_hi
       << "]";
    throw ConvergenceFailure(os.str());
}

CharRoot rightmost_root(const LinearCoeffs& c, const DelayKernel& k) {
    double w0 = omega0(c);
    double pad = 0.05 * std::max(1.0, w0);
    Rect window{-5.0 * c.a1 - 1.0, std::max(1.0, w0), -pad, 4.0 * w0};
    for (int widen = 0; widen < 4; ++widen) {
        auto root = rightmost_root_in(c, k, window);
        if (root) {
            double re = root->lambda.real(), im = std::abs(root->lambda.imag());
            double tol = 1e-6 * std::max(1.0, w0);
            bool touches = re < window.re_lo + tol || re > window.re_hi - tol ||
                           im > window.im_hi - tol;
            if (!touches) return *root;
        }
        double dw = window.re_hi - window.re_lo, dh = window.im_hi - window.im_lo;
        window.re_lo -= 0.5 * dw; window.re_hi += 0.5 * dw;
        window.im_lo -= 0.5 * dh; window.im_hi += 0.5 * dh;
    }
    throw ConvergenceFailure("no interior rightmost root after window widening");
}

Complex transversality(const LinearCoeffs& c, const DelayKernel& k,
                       Complex lambda) {
    Complex gl = char_dLambda(c, k, lambda);
    if (std::abs(gl) < 1e-12)
        throw DegenerateRoot("char_dLambda vanishes: root is not simple");
    return -char_dE(c, k, lambda) / gl;
}

HopfPoint critical_expectation(const LinearCoeffs& c, KernelFamily family,
                               int shape, double e_max) {
    if (!routh_hurwitz(c).ok)
        throw InfeasibleParams(
            "equilibrium is unstable without delay; no stability loss to locate");
    double w0 = omega0(c);
    double ceiling = e_max > 0.0 ? e_max : 1000.0 * E1_lower_bound(c, w0);

    // every root with Re >= 0 satisfies the Cauchy-style modulus bound,
    // since |transform| <= 1 on the closed right half-plane
    double bound =
        1.0 + std::max({std::abs(c.a1), std::abs(c.a2) + std::abs(c.a4),
                        std::abs(c.a3) + std::abs(c.a5)});
    Rect right_half{0.0, bound, -bound, bound};

    auto kernel_at = [&](double e) { return DelayKernel{family, e, shape}; };
    auto unstable = [&](double e) {
        return count_roots_in_rectangle(c, kernel_at(e), right_half) > 0;
    };

    double lo = 0.0, hi = 0.01;
    while (!unstable(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > ceiling) {
            std::ostringstream os;
            os << "rightmost root stays in the left half-plane up to E = " << ceiling;
            throw NoCrossingFound(os.str(), ceiling);
        }
    }
    while (hi - lo > 1e-8) {
        double mid = 0.5 * (lo + hi);
        (unstable(mid) ? hi : lo) = mid;
    }

    // crossing-root estimate from the barely-unstable side
    Rect near_axis{-0.05, bound, -0.05, bound};
    auto est = rightmost_root_in(c, kernel_at(hi), near_axis);
    if (!est || est->lambda.imag() <= 1e-8)
        throw ConvergenceFailure("crossing root estimate is not a complex pair");

    // polish (omega, E) on char_eval(i omega; E) = 0
    double omega = est->lambda.imag(), e_crit = hi;
    bool polished = false;
    for (int it = 0; it < 60; ++it) {
        DelayKernel k = kernel_at(e_crit);
        Complex iw(0.0, omega);
        Complex h = char_eval(c, k, iw);
        if (std::abs(h) < 1e-13) { polished = true; break; }
        Complex hw = Complex(0.0, 1.0) * char_dLambda(c, k, iw);
        Complex he = char_dE(c, k, iw);
        double det = hw.real() * he.imag() - he.real() * hw.imag();
        if (std::abs(det) < 1e-300) break;
        double dw = (-h.real() * he.imag() + he.real() * h.imag()) / det;
        double de = (-hw.real() * h.imag() + h.real() * hw.imag()) / det;
        double damp = 1.0;
        while (damp > 1e-4 &&
               (omega + damp * dw <= 0.0 || e_crit + damp * de <= 0.0))
            damp *= 0.5;
        omega += damp * dw;
        e_crit += damp * de;
        if (std::abs(dw) + std::abs(de) < 1e-15 * (1.0 + omega + e_crit)) {
            polished = true;
            break;
        }
    }
    if (!polished) {
        omega = est->lambda.imag();
        e_crit = hi;
    }
    double resid = std::abs(char_eval(c, kernel_at(e_crit), Complex(0.0, omega)));
    if (resid > 1e-8)
        throw ConvergenceFailure("crossing residual above tolerance");

    Complex dlam = transversality(c, kernel_at(e_crit), Complex(0.0, omega));
    HopfPoint hp;
    hp.E_crit = e_crit;
    hp.omega_crit = omega;
    hp.transversal_slope = dlam.real();
    hp.transversal_ok = std::abs(dlam.real()) > 1e-8;
    return hp;
}

ProofCurves proof_curves(const LinearCoeffs& c, const DelayKernel& k) {
    ProofCurves pc;
    pc.omega0 = omega0(c);
    pc.omega1 = omega1(c, k);
    pc.E1_bound = E1_lower_bound(c, pc.omega1);
    pc.c_constant = kCConstant;
    return pc;
}

} // namespace lvhopf
