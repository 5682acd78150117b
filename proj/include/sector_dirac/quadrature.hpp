#pragma once

// Gauss-Legendre rules (Newton on the Legendre recurrence) and a
// tanh-sinh rule for finite intervals with level doubling.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sectordirac {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1, 1].
inline QuadRule gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton.
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

// Rule mapped onto [a, b].
inline QuadRule gauss_legendre(int n, double a, double b)
{
    QuadRule r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.x[i] = mid + half * r.x[i];
        r.w[i] *= half;
    }
    return r;
}

template <class F>
double integrate_gl(const F& f, double a, double b, int n)
{
    const QuadRule r = gauss_legendre(n, a, b);
    double s = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(r.x[i]);
    return s;
}

// Tanh-sinh on [a, b].  Doubles the level until two consecutive passes
// agree to the requested tolerance or max_level is hit.
template <class F>
double integrate_tanh_sinh(const F& f, double a, double b,
                           double rel_tol = 1e-13, int max_level = 12,
                           double* achieved_err = nullptr)
{
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double piover2 = 1.57079632679489661923;
    // t_max: weights underflow beyond ~ this abscissa.
    const double t_max = std::asinh(std::atanh(1.0 - 1e-16) / piover2);

    auto node_sum = [&](double h, bool odd_only) {
        double s = 0.0;
        const int kmax = int(t_max / h);
        for (int k = odd_only ? 1 : 0; k <= kmax; k += odd_only ? 2 : 1) {
            const double t = k * h;
            const double u = piover2 * std::sinh(t);
            const double x = std::tanh(u);
            const double ch = std::cosh(u);
            const double w = piover2 * std::cosh(t) / (ch * ch);
            const double x1 = mid + half * x;
            const double x2 = mid - half * x;
            double term = f(x1) * w;
            if (k > 0) term += f(x2) * w;
            s += term;
        }
        return s;
    };

    double h = 1.0;
    double sum = node_sum(h, false);
    double prev = half * h * sum;
    double result = prev;
    double err = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        sum += node_sum(h, true);
        result = half * h * sum;
        err = std::abs(result - prev);
        const double scale = std::max(std::abs(result), 1e-300);
        if (err <= rel_tol * scale && level >= 3) break;
        prev = result;
    }
    if (achieved_err) *achieved_err = err;
    return result;
}

// Trapezoid weights for a strictly increasing abscissa set.
inline std::vector<double> trapezoid_weights(const std::vector<double>& x)
{
    const size_t n = x.size();
    if (n < 2) throw std::invalid_argument("trapezoid_weights: need >= 2 nodes");
    std::vector<double> w(n, 0.0);
    for (size_t i = 0; i + 1 < n; ++i) {
        const double h = x[i + 1] - x[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

// Composite Simpson weights on a uniform grid of step h; an even panel
// count gets a 3/8 rule at the tail.
inline std::vector<double> simpson_weights(int n, double h)
{
    if (n < 4) throw std::invalid_argument("simpson_weights: need >= 4 nodes");
    std::vector<double> w(n, 0.0);
    int last = n - 1;
    if ((n - 1) % 2 != 0) {
        // odd panel count: Simpson 3/8 over the final three panels
        last = n - 4;
        const double c = 3.0 * h / 8.0;
        w[n - 4] += c;
        w[n - 3] += 3.0 * c;
        w[n - 2] += 3.0 * c;
        w[n - 1] += c;
    }
    for (int i = 0; i + 2 <= last; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    return w;
}

}  // namespace sectordirac
