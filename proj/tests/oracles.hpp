#pragma once

// Test-only oracles, kept independent of the library's primary
// evaluation paths: an adaptive Gauss-Kronrod integrator, the Bessel-K
// integral representation driven by it, the small-argument series, and
// half-integer closed forms.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Gauss 7 / Kronrod 15 on [a, b] with an error estimate.
template <class F>
double gk15(const F& f, double a, double b, double& err)
{
    static const double nodes[8] = {
        0.000000000000000, 0.405845151377397, 0.741531185599394,
        0.949107912342759, 0.207784955007898, 0.586087235467691,
        0.864864423359769, 0.991455371120813};
    static const double wg[4] = {
        0.417959183673469, 0.381830050505119, 0.279705391489277,
        0.129484966168870};
    static const double wk[8] = {
        0.209482141084728, 0.190350578064785, 0.140653259715525,
        0.063092092629979, 0.204432940075298, 0.169004726639267,
        0.104790010322250, 0.022935322010529};

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g = wg[0] * f0;
    double k = wk[0] * f0;
    for (int i = 1; i < 4; ++i) {
        const double y = f(mid + half * nodes[i]) + f(mid - half * nodes[i]);
        g += wg[i] * y;
        k += wk[i] * y;
    }
    for (int i = 4; i < 8; ++i) {
        const double y = f(mid + half * nodes[i]) + f(mid - half * nodes[i]);
        k += wk[i] * y;
    }
    g *= half;
    k *= half;
    err = std::pow(200.0 * std::abs(g - k), 1.5);
    return k;
}

// Recursive bisection until the local error estimate is below tol
// relative to the local value.  Good enough for oracle duty; the mild
// overcount of per-interval tolerances is irrelevant at these levels.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol = 1e-13,
                          int depth = 0)
{
    double err = 0.0;
    const double s = gk15(f, a, b, err);
    if (err < tol * (std::abs(s) + 1e-300) || depth > 30) return s;
    const double mid = 0.5 * (a + b);
    return integrate_adaptive(f, a, mid, tol, depth + 1) +
           integrate_adaptive(f, mid, b, tol, depth + 1);
}

// K_nu(r) directly from int_0^T exp(-r cosh t) cosh(nu t) dt by adaptive
// quadrature, with the same peak rescaling trick done independently.
inline double bessel_k_integral(double nu, double r)
{
    nu = std::abs(nu);
    auto log_f = [&](double t) {
        const double x = std::abs(nu * t);
        return -r * std::cosh(t) + x + std::log1p(std::exp(-2.0 * x)) -
               0.6931471805599453;
    };
    // crude peak search on a fine grid, then truncation point
    double gmax = log_f(0.0), tpk = 0.0;
    for (double t = 0.0; t < 60.0; t += 0.01) {
        const double g = log_f(t);
        if (g > gmax) { gmax = g; tpk = t; }
    }
    double tcut = tpk + 1.0;
    while (log_f(tcut) > gmax - 46.0) tcut += 1.0;
    auto f = [&](double t) { return std::exp(log_f(t) - gmax); };
    return std::exp(gmax) * integrate_adaptive(f, 0.0, tcut, 1e-13);
}

// Small-argument series from I_{+-nu}:
//   K_nu = (1/2) [ Gamma(nu) (r/2)^-nu M_-(r) + Gamma(-nu) (r/2)^nu M_+(r) ]
// with M_+-  = sum_k (r^2/4)^k / (k! (1 -+ nu)_k).  Requires nu not an
// integer; accurate for small r.
inline double bessel_k_series(double nu, double r, double gamma_plus,
                              double gamma_minus)
{
    nu = std::abs(nu);
    const double q = 0.25 * r * r;
    auto series = [&](double shift) {
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (k * (k + shift));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    };
    return 0.5 * (gamma_plus * std::pow(0.5 * r, -nu) * series(-nu) +
                  gamma_minus * std::pow(0.5 * r, nu) * series(nu));
}

// Closed forms for half-integer orders.
inline double bessel_k_half(int twice_nu, double r)
{
    const double pref = std::sqrt(3.14159265358979323846 / (2.0 * r)) * std::exp(-r);
    switch (twice_nu) {
        case 1: return pref;                                   // K_{1/2}
        case 3: return pref * (1.0 + 1.0 / r);                 // K_{3/2}
        case 5: return pref * (1.0 + 3.0 / r + 3.0 / (r * r)); // K_{5/2}
        default: throw std::invalid_argument("bessel_k_half: unsupported order");
    }
}

}  // namespace oracles
