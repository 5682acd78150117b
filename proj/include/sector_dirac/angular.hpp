#pragma once

// The boundary-adapted angular operator K = sigma3 (-2i d/dtheta) + 1 on
// (-omega, omega): eigenvalues lambda_kappa = pi (1 + 2 kappa) / (2 omega),
// eigenspinors u_kappa, and the closed-form sigma3 matrix elements that
// couple the modes once a mass term is present.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "sector_dirac/geometry.hpp"
#include "sector_dirac/quadrature.hpp"
#include "sector_dirac/spinor.hpp"

namespace sectordirac {

inline double lambda_kappa(int kappa, const SectorGeometry& geom)
{
    return pi * (1.0 + 2.0 * kappa) / (2.0 * geom.omega);
}

// u_kappa(theta); pointwise norm^2 = 1/(2 omega), orthonormal on
// (-omega, omega).  Gauge: real positive first component at theta = 0.
inline Spinor mode_function(int kappa, const SectorGeometry& geom, double theta)
{
    if (std::abs(theta) > geom.omega + 1e-15)
        throw std::domain_error("mode_function: |theta| > omega");
    const double mu = 0.5 * (lambda_kappa(kappa, geom) - 1.0);
    const double amp = 1.0 / (2.0 * std::sqrt(geom.omega));
    const cplx phase = std::exp(cplx(0.0, mu * theta));
    const double sign = (kappa % 2 == 0) ? -1.0 : 1.0;  // (-1)^(kappa+1)
    return {amp * phase, amp * sign * cplx(0.0, 1.0) * std::conj(phase)};
}

struct AngularMode {
    int kappa;
    double lambda;
    SectorGeometry geometry;

    AngularMode(int kappa_, const SectorGeometry& geom)
        : kappa(kappa_), lambda(lambda_kappa(kappa_, geom)), geometry(geom) {}

    Spinor at(double theta) const { return mode_function(kappa, geometry, theta); }
};

// <u_j, sigma3 u_kappa> on L^2(-omega, omega).  Closed form
// 2 sin(pi n / 2) / (pi n) with n = kappa - j: zero for even n,
// 2 (-1)^((n-1)/2) / (pi n) for odd n.  Independent of omega.
inline double sigma3_coupling(int j, int kappa)
{
    const int n = kappa - j;
    if (n % 2 == 0) return 0.0;
    const int rem = ((n % 4) + 4) % 4;  // 1 or 3 for odd n
    const double sin_half = rem == 1 ? 1.0 : -1.0;
    return 2.0 * sin_half / (pi * n);
}

// Dense coupling matrix over a contiguous mode window [k_lo, k_hi].
inline std::vector<double> sigma3_coupling_matrix(int k_lo, int k_hi)
{
    const int n = k_hi - k_lo + 1;
    std::vector<double> m(size_t(n) * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            m[size_t(a) * n + b] = sigma3_coupling(k_lo + a, k_lo + b);
    return m;
}

// Finite-difference application of K on a uniformly sampled spinor field
// over [-omega, omega].  4th-order centered differences with one-sided
// closures at the endpoints (the boundary condition is algebraic, not
// periodic, so there is no wrap-around).
inline std::vector<Spinor> apply_K(const std::vector<Spinor>& field,
                                   const SectorGeometry& geom)
{
    const int n = int(field.size());
    if (n < 8) throw std::invalid_argument("apply_K: grid too coarse (need >= 8 points)");
    const double h = 2.0 * geom.omega / (n - 1);

    auto derivative = [&](int i, auto comp) -> cplx {
        if (i >= 2 && i <= n - 3) {
            return (-comp(i + 2) + 8.0 * comp(i + 1) - 8.0 * comp(i - 1) + comp(i - 2)) /
                   (12.0 * h);
        }
        if (i <= 1) {
            const int o = i;
            return (-25.0 * comp(o) + 48.0 * comp(o + 1) - 36.0 * comp(o + 2) +
                    16.0 * comp(o + 3) - 3.0 * comp(o + 4)) /
                   (12.0 * h);
        }
        const int o = i;
        return (25.0 * comp(o) - 48.0 * comp(o - 1) + 36.0 * comp(o - 2) -
                16.0 * comp(o - 3) + 3.0 * comp(o - 4)) /
               (12.0 * h);
    };

    std::vector<Spinor> out(n);
    for (int i = 0; i < n; ++i) {
        const cplx dup = derivative(i, [&](int k) { return field[k].up; });
        const cplx dlo = derivative(i, [&](int k) { return field[k].lo; });
        // K = sigma3 (-2i d/dtheta) + 1
        out[i].up = cplx(0.0, -2.0) * dup + field[i].up;
        out[i].lo = cplx(0.0, 2.0) * dlo + field[i].lo;
    }
    return out;
}

// Gauss-Legendre rule on (-omega, omega) sized so products of modes up to
// |kappa| <= kmax integrate to ~1e-13.
inline QuadRule angular_rule(const SectorGeometry& geom, int kmax)
{
    const double max_freq =
        std::abs(lambda_kappa(kmax, geom) - 1.0) * 0.5 + std::abs(lambda_kappa(-kmax - 1, geom) - 1.0) * 0.5;
    const double total_phase = 2.0 * geom.omega * max_freq;
    const int n = std::max(48, int(0.8 * total_phase) + 32);
    return gauss_legendre(n, -geom.omega, geom.omega);
}

// <f, g> on (-omega, omega) by quadrature over sampled callables.
template <class F, class G>
cplx angular_inner(const F& f, const G& g, const QuadRule& rule)
{
    cplx s(0.0);
    for (size_t i = 0; i < rule.x.size(); ++i)
        s += rule.w[i] * inner(f(rule.x[i]), g(rule.x[i]));
    return s;
}

}  // namespace sectordirac
