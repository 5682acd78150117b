#pragma once

// Spectral diagnostics: Weyl-sequence quotients in closed form, the
// Virial defect |lambda ||v||^2 - m <sigma3 v, v>|, the square identity
// ||D u||^2 = ||sigma.grad u||^2 + m^2 ||u||^2 + m ||u||^2_boundary, and
// the radial reality check Re int conj(a') (a/r) r dr = 0.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sector_dirac/assembly.hpp"
#include "sector_dirac/fields.hpp"
#include "sector_dirac/quadrature.hpp"

namespace sectordirac {

// ---------------------------------------------------------------------
// Weyl probes

// C-infinity bump: 1 below 1, exp(1 - 1/(1 - (t-1)^2)) on (1, 2), 0 above.
inline double weyl_cutoff(double t)
{
    t = std::abs(t);
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    const double s = t - 1.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

inline double weyl_cutoff_derivative(double t)
{
    t = std::abs(t);
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double s = t - 1.0;
    const double q = 1.0 - s * s;
    return weyl_cutoff(t) * (-2.0 * s / (q * q));
}

namespace detail {

struct CutoffMoments {
    double chi2;   // int_R chi(|x|)^2 dx
    double dchi2;  // int_R chi'(|x|)^2 dx
};

inline const CutoffMoments& cutoff_moments()
{
    static const CutoffMoments m = [] {
        CutoffMoments out;
        const double tail =
            integrate_gl([](double t) { const double c = weyl_cutoff(t); return c * c; },
                         1.0, 2.0, 200);
        const double dtail = integrate_gl(
            [](double t) { const double d = weyl_cutoff_derivative(t); return d * d; },
            1.0, 2.0, 200);
        out.chi2 = 2.0 * (1.0 + tail);
        out.dchi2 = 2.0 * dtail;
        return out;
    }();
    return m;
}

}  // namespace detail

struct WeylProbe {
    int n;
    double mass;
    double lambda_target;
    double quotient;  // ||(D - lambda) u_n|| / ||u_n||
};

// Plane-wave probe for lambda > m >= 0, cut off at scale n in both
// coordinates.  The closed forms give
//   ||u_n||^2          = |u|^2 n^2 ||chi||^4,
//   ||(D-lambda)u_n||^2 = 2 |u|^2 ||chi'||^2 ||chi||^2,
// with |u|^2 = 2 lambda / (lambda - m); the spinor factor cancels and the
// quotient is c / n with c independent of lambda and m.
inline WeylProbe weyl_quotient_positive_mass(int n, double mass, double lambda)
{
    if (n < 1) throw std::invalid_argument("weyl_quotient_positive_mass: n >= 1");
    if (!(lambda > mass))
        throw std::invalid_argument("weyl_quotient_positive_mass: requires lambda > m");
    const auto& cm = detail::cutoff_moments();
    const double amp2 = 2.0 * lambda / (lambda - mass);
    const double norm2 = amp2 * double(n) * double(n) * cm.chi2 * cm.chi2;
    const double defect2 = 2.0 * amp2 * cm.dchi2 * cm.chi2;
    return {n, mass, lambda, std::sqrt(defect2 / norm2)};
}

// The charge-conjugated probe is a Weyl sequence for -lambda with the
// same quotient (C preserves all the norms involved).
inline WeylProbe weyl_quotient_charge_conjugate(int n, double mass, double lambda)
{
    WeylProbe p = weyl_quotient_positive_mass(n, mass, lambda);
    p.lambda_target = -lambda;
    return p;
}

// Edge probe (1, -i)^T e^{m x1 - i lambda x2} chi(|x2|/n) on the
// half-plane sector for m < 0; the boundary condition B_{-e1} u = u holds
// exactly and the quotient is again c / n, independent of lambda.
inline WeylProbe weyl_quotient_negative_mass(int n, double mass, double lambda)
{
    if (n < 1) throw std::invalid_argument("weyl_quotient_negative_mass: n >= 1");
    if (!(mass < 0.0))
        throw std::invalid_argument("weyl_quotient_negative_mass: requires m < 0");
    // B_{-e1} (1, -i)^T = (1, -i)^T, entrywise exact
    const Spinor w{cplx(1.0), cplx(0.0, -1.0)};
    const Spinor bw = boundary_matrix({-1.0, 0.0}) * w;
    if (std::abs(bw.up - w.up) + std::abs(bw.lo - w.lo) > 1e-15)
        throw std::logic_error("weyl_quotient_negative_mass: boundary condition violated");

    const auto& cm = detail::cutoff_moments();
    const double am = std::abs(mass);
    const double norm2 = (double(n) / am) * cm.chi2;
    const double defect2 = (2.0 / (am * double(n))) * cm.dchi2;
    return {n, mass, lambda, std::sqrt(defect2 / norm2)};
}

// ---------------------------------------------------------------------
// Virial identity

// |lambda ||v||^2 - m <sigma3 v, v>| for a candidate eigenpair; zero for
// genuine point spectrum, and a truncation-artifact meter on finite
// assemblies.
inline double virial_defect(const BandedSymMatrix& sigma3_form,
                            const std::vector<double>& v, double lambda, double mass)
{
    std::vector<double> sv;
    sigma3_form.matvec(v, sv);
    const double n2 = detail::dot(v, v);
    return std::abs(lambda * n2 - mass * detail::dot(sv, v));
}

inline double virial_defect(const SectorAssembly& a, const std::vector<double>& v,
                            double lambda)
{
    return virial_defect(a.sigma3_form, v, lambda, a.mass);
}

// ---------------------------------------------------------------------
// Square identity

namespace detail {

// -i sigma.grad in polar coordinates by finite differences:
//   D0 u = -i [ sigma.e_rad dr u + sigma.e_ang (1/r) dtheta u ].
inline PolarField apply_massless_dirac(const PolarField& u)
{
    PolarField out(u.geom, u.grid, u.n_theta);
    const auto r = u.grid.nodes();
    const int nt = u.n_theta;
    const double htheta = 2.0 * u.geom.omega / (nt - 1);

    // radial derivative column by column
    std::vector<cplx> col_up(u.grid.n), col_lo(u.grid.n);
    std::vector<std::vector<cplx>> dr_up(nt), dr_lo(nt);
    for (int t = 0; t < nt; ++t) {
        for (int i = 0; i < u.grid.n; ++i) {
            col_up[i] = u.at(i, t).up;
            col_lo[i] = u.at(i, t).lo;
        }
        dr_up[t] = radial_derivative(u.grid, col_up);
        dr_lo[t] = radial_derivative(u.grid, col_lo);
    }

    auto dtheta = [&](int i, int t, auto comp) -> cplx {
        auto f = [&](int tt) { return comp(u.at(i, tt)); };
        if (t >= 2 && t <= nt - 3)
            return (-f(t + 2) + 8.0 * f(t + 1) - 8.0 * f(t - 1) + f(t - 2)) /
                   (12.0 * htheta);
        if (t <= 1)
            return (-25.0 * f(t) + 48.0 * f(t + 1) - 36.0 * f(t + 2) + 16.0 * f(t + 3) -
                    3.0 * f(t + 4)) /
                   (12.0 * htheta);
        return (25.0 * f(t) - 48.0 * f(t - 1) + 36.0 * f(t - 2) - 16.0 * f(t - 3) +
                3.0 * f(t - 4)) /
               (12.0 * htheta);
    };

    for (int i = 0; i < u.grid.n; ++i) {
        for (int t = 0; t < nt; ++t) {
            const double th = u.theta(t);
            const Mat2 sr = pauli_dot(e_rad(th));
            const Mat2 sa = pauli_dot(e_ang(th));
            const Spinor du_r{dr_up[t][i], dr_lo[t][i]};
            const Spinor du_t{dtheta(i, t, [](const Spinor& s) { return s.up; }),
                              dtheta(i, t, [](const Spinor& s) { return s.lo; })};
            out.at(i, t) =
                cplx(0, -1) * (sr * du_r + sa * (du_t * cplx(1.0 / r[i])));
        }
    }
    return out;
}

inline std::vector<double> diag_radial_weights(const RadialGrid& grid)
{
    if (grid.spacing == GridSpacing::Uniform)
        return simpson_weights(grid.n, grid.uniform_step());
    return grid.weights();
}

inline double polar_inner_real(const PolarField& f, const PolarField& g)
{
    const auto r = f.grid.nodes();
    const auto wr = diag_radial_weights(f.grid);
    const double ht = 2.0 * f.geom.omega / (f.n_theta - 1);
    const auto wt = simpson_weights(f.n_theta, ht);
    double s = 0.0;
    for (int i = 0; i < f.grid.n; ++i) {
        double row = 0.0;
        for (int t = 0; t < f.n_theta; ++t)
            row += wt[t] * inner(f.at(i, t), g.at(i, t)).real();
        s += wr[i] * r[i] * row;
    }
    return s;
}

// Sobolev seminorm ||grad u||^2 = int (|dr u|^2 + |dtheta u|^2 / r^2) r dr dtheta.
inline double polar_gradient_norm2(const PolarField& u)
{
    const auto r = u.grid.nodes();
    const auto wr = diag_radial_weights(u.grid);
    const int nt = u.n_theta;
    const double ht = 2.0 * u.geom.omega / (nt - 1);
    const auto wt = simpson_weights(nt, ht);

    std::vector<cplx> col_up(u.grid.n), col_lo(u.grid.n);
    std::vector<std::vector<cplx>> dr_up(nt), dr_lo(nt);
    for (int t = 0; t < nt; ++t) {
        for (int i = 0; i < u.grid.n; ++i) {
            col_up[i] = u.at(i, t).up;
            col_lo[i] = u.at(i, t).lo;
        }
        dr_up[t] = radial_derivative(u.grid, col_up);
        dr_lo[t] = radial_derivative(u.grid, col_lo);
    }
    auto dtheta = [&](int i, int t, auto comp) -> cplx {
        auto f = [&](int tt) { return comp(u.at(i, tt)); };
        if (t >= 2 && t <= nt - 3)
            return (-f(t + 2) + 8.0 * f(t + 1) - 8.0 * f(t - 1) + f(t - 2)) / (12.0 * ht);
        if (t <= 1)
            return (-25.0 * f(t) + 48.0 * f(t + 1) - 36.0 * f(t + 2) + 16.0 * f(t + 3) -
                    3.0 * f(t + 4)) /
                   (12.0 * ht);
        return (25.0 * f(t) - 48.0 * f(t - 1) + 36.0 * f(t - 2) - 16.0 * f(t - 3) +
                3.0 * f(t - 4)) /
               (12.0 * ht);
    };
    double s = 0.0;
    for (int i = 0; i < u.grid.n; ++i) {
        double row = 0.0;
        for (int t = 0; t < nt; ++t) {
            const cplx tu = dtheta(i, t, [](const Spinor& sp) { return sp.up; });
            const cplx tl = dtheta(i, t, [](const Spinor& sp) { return sp.lo; });
            row += wt[t] * (std::norm(dr_up[t][i]) + std::norm(dr_lo[t][i]) +
                            (std::norm(tu) + std::norm(tl)) / (r[i] * r[i]));
        }
        s += wr[i] * r[i] * row;
    }
    return s;
}

}  // namespace detail

struct BoundaryConditionViolation : std::invalid_argument {
    double max_violation;
    explicit BoundaryConditionViolation(double v)
        : std::invalid_argument("square_identity_residual: boundary condition violated, max |B_n u - u| = " +
                                std::to_string(v)),
          max_violation(v) {}
};

// | ||D u||^2 - ||grad u||^2 - m^2 ||u||^2 - m ||u||^2_boundary | with
// every norm evaluated by quadrature.  The kinetic term is the Sobolev
// seminorm: for fields in the boundary-condition domain it equals
// ||sigma.grad u||^2, and at m = 0 the residual reduces to the norm
// identity ||D u|| = ||grad u||.
inline double square_identity_residual(const PolarField& u, double mass)
{
    const int nt = u.n_theta;

    // boundary condition check at both edges
    const Mat2 b_plus = boundary_matrix(e_ang(u.geom.theta0 + u.geom.omega));
    const Mat2 b_minus =
        cplx(-1.0) * boundary_matrix(e_ang(u.geom.theta0 - u.geom.omega));
    double sup = 0.0, violation = 0.0;
    for (int i = 0; i < u.grid.n; ++i) {
        for (int t = 0; t < nt; ++t) sup = std::max(sup, std::sqrt(u.at(i, t).norm2()));
        const Spinor rp = b_plus * u.at(i, nt - 1) - u.at(i, nt - 1);
        const Spinor rm = b_minus * u.at(i, 0) - u.at(i, 0);
        violation = std::max(violation, std::sqrt(std::max(rp.norm2(), rm.norm2())));
    }
    if (violation > 1e-10 * (1.0 + sup)) throw BoundaryConditionViolation(violation);

    const PolarField d0u = detail::apply_massless_dirac(u);
    PolarField du = d0u;
    for (int i = 0; i < u.grid.n; ++i)
        for (int t = 0; t < nt; ++t) {
            const Spinor s3u = sigma3 * u.at(i, t);
            du.at(i, t) = du.at(i, t) + cplx(mass) * s3u;
        }

    const double du2 = detail::polar_inner_real(du, du);
    const double grad2 = detail::polar_gradient_norm2(u);
    const double u2 = detail::polar_inner_real(u, u);

    const auto wb = detail::diag_radial_weights(u.grid);
    double boundary2 = 0.0;  // arclength measure dr along the two rays
    for (int i = 0; i < u.grid.n; ++i)
        boundary2 += wb[i] * (u.at(i, 0).norm2() + u.at(i, nt - 1).norm2());

    return std::abs(du2 - grad2 - mass * mass * u2 - mass * boundary2);
}

// ---------------------------------------------------------------------
// Radial reality check

// Boundary-defect estimator of Re int conj(a') (a/r) r dr: centered
// differences against uniform weights telescope exactly, so the result is
// pure endpoint data, ~ |a(r_min)|^2 for profiles with a(0) != 0 and
// roundoff-small for admissible ones.
inline double radial_reality_check(const RadialGrid& grid, const std::vector<cplx>& a)
{
    if (int(a.size()) != grid.n)
        throw std::invalid_argument("radial_reality_check: size mismatch");
    const int n = grid.n;
    double total = 0.0;
    // uniform coordinate: r itself or s = log r; the integral is
    // coordinate-free, int Re(conj(da/dx) a) dx
    for (int i = 0; i < n; ++i) {
        cplx diff;
        if (i == 0)
            diff = a[1] - a[0];
        else if (i == n - 1)
            diff = a[n - 1] - a[n - 2];
        else
            diff = 0.5 * (a[i + 1] - a[i - 1]);
        total += (std::conj(diff) * a[i]).real();
    }
    return 2.0 * std::abs(total);
}

}  // namespace sectordirac
