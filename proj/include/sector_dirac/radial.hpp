#pragma once

// Radial fiber operators of the partial-wave decomposition.  Fiber kappa
// acts on pairs (a, b) in L^2((0,inf), r dr)^2 as
//     d^kappa (a, b) = (-1)^kappa ( b' + (lam+1)/(2r) b,  -a' + (lam-1)/(2r) a ),
// lam = lambda_kappa.  Substituting f = sqrt(r) a maps to L^2(dr) where
// the operator reads (-1)^kappa [ i sigma2 d/dr + sigma1 lam/(2r) ]; the
// discrete matrices live in those variables on a staggered grid (b on
// nodes, a on midpoints) so the first-order system does not double.
//
// Self-adjointness: the kappa = 0 fiber loses essential self-adjointness
// exactly when lambda_0 < 1 (non-convex sectors); the deficiency element
// is built from K_{nu0} and K_{nu0+1}, and the unit-circle extension
// parameter gamma enters the matrix as a Robin coupling of the two
// components at r_min with ratio b/a of the generator a+ + gamma sigma3 a+.

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sector_dirac/angular.hpp"
#include "sector_dirac/bessel.hpp"
#include "sector_dirac/fields.hpp"
#include "sector_dirac/fitting.hpp"
#include "sector_dirac/geometry.hpp"
#include "sector_dirac/grid.hpp"
#include "sector_dirac/linalg.hpp"

namespace sectordirac {

enum class FiberClass { SelfAdjoint, DeficiencyOne };

// Self-adjoint iff lambda_kappa >= 1, i.e. kappa >= 1 or omega <= pi/2.
inline FiberClass classify_self_adjoint(const SectorGeometry& geom, int kappa)
{
    if (kappa < 0)
        throw std::invalid_argument(
            "classify_self_adjoint: kappa >= 0 (negative channels are paired)");
    if (kappa >= 1 || lambda_kappa(0, geom) >= 1.0) return FiberClass::SelfAdjoint;
    return FiberClass::DeficiencyOne;
}

// Deficiency indices summed over all fibers: 0 or 1.
inline int deficiency_count(const SectorGeometry& geom)
{
    return classify_self_adjoint(geom, 0) == FiberClass::DeficiencyOne ? 1 : 0;
}

struct FiberOperator {
    int kappa;
    SectorGeometry geometry;
    double lambda;

    FiberOperator(int kappa_, const SectorGeometry& geom)
        : kappa(kappa_), geometry(geom), lambda(lambda_kappa(kappa_, geom))
    {
        if (kappa < 0) throw std::invalid_argument("FiberOperator: kappa >= 0");
    }
    double sign() const { return kappa % 2 == 0 ? 1.0 : -1.0; }
};

// Sampled (a(r), b(r)) pair in the L^2(r dr) variables.
struct RadialPair {
    std::vector<cplx> a;
    std::vector<cplx> b;
};

// Pointwise application of d^kappa by 4th-order finite differences.
inline RadialPair fiber_apply(const FiberOperator& op, const RadialGrid& grid,
                              const RadialPair& f)
{
    const auto r = grid.nodes();
    const auto da = radial_derivative(grid, f.a);
    const auto db = radial_derivative(grid, f.b);
    const double s = op.sign();
    RadialPair out;
    out.a.resize(grid.n);
    out.b.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        out.a[i] = s * (db[i] + (op.lambda + 1.0) / (2.0 * r[i]) * f.b[i]);
        out.b[i] = s * (-da[i] + (op.lambda - 1.0) / (2.0 * r[i]) * f.a[i]);
    }
    return out;
}

struct ExtensionParameter {
    double s;  // gamma = exp(i s), s in [0, 2 pi)

    static ExtensionParameter from_phase(double phase)
    {
        double p = std::fmod(phase, 2.0 * pi);
        if (p < 0.0) p += 2.0 * pi;
        return {p};
    }
    static ExtensionParameter from_gamma(cplx g)
    {
        if (std::abs(std::abs(g) - 1.0) > 1e-12)
            throw std::invalid_argument("ExtensionParameter: |gamma| != 1");
        double p = std::arg(g);
        if (p < 0.0) p += 2.0 * pi;
        return {p};
    }
    cplx gamma() const { return std::exp(cplx(0.0, s)); }
};

// a+ = (K_{nu0}, -i K_{nu0+1}) sampled on the grid; square integrable and
// solving (d^0 - i) a+ = 0 exactly when omega > pi/2.
inline RadialPair deficiency_element(const SectorGeometry& geom, const RadialGrid& grid)
{
    if (classify_self_adjoint(geom, 0) == FiberClass::SelfAdjoint)
        throw std::invalid_argument("deficiency_element: fiber already self-adjoint");
    const double nu0 = geom.nu0();
    const auto r = grid.nodes();
    RadialPair out;
    out.a.resize(grid.n);
    out.b.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        out.a[i] = bessel_k(nu0, r[i]);
        out.b[i] = cplx(0.0, -1.0) * bessel_k(nu0 + 1.0, r[i]);
    }
    return out;
}

// a+ + gamma sigma3 a+ = ((1+gamma) K_{nu0}, -i (1-gamma) K_{nu0+1}).
inline RadialPair extension_generator(const SectorGeometry& geom, const RadialGrid& grid,
                                      const ExtensionParameter& gamma)
{
    RadialPair ap = deficiency_element(geom, grid);
    const cplx g = gamma.gamma();
    for (int i = 0; i < grid.n; ++i) {
        ap.a[i] *= (1.0 + g);
        ap.b[i] *= (1.0 - g);
    }
    return ap;
}

// Relative residual over interior nodes (skipping a margin at each end
// where the one-sided stencils live).
inline double interior_relative_residual(const RadialGrid& grid,
                                         const RadialPair& residual,
                                         const RadialPair& reference, int margin = 5)
{
    const auto r = grid.nodes();
    const auto w = grid.weights();
    double num = 0.0, den = 0.0;
    for (int i = margin; i < grid.n - margin; ++i) {
        num += w[i] * r[i] * (std::norm(residual.a[i]) + std::norm(residual.b[i]));
        den += w[i] * r[i] * (std::norm(reference.a[i]) + std::norm(reference.b[i]));
    }
    return std::sqrt(num / den);
}

// Fitted small-r power exponents of the deficiency element components,
// a ~ r^{-|nu0|} and b ~ r^{-(1-|nu0|)}.  The a-exponent is tiny, so the
// fit window sits deep (r ~ 1e-14..1e-12) where the subleading
// (r/2)^{2|nu0|} correction no longer biases the slope.
struct SmallRExponents {
    double a_exponent;
    double b_exponent;
};

inline SmallRExponents deficiency_small_r_exponents(const SectorGeometry& geom)
{
    if (classify_self_adjoint(geom, 0) == FiberClass::SelfAdjoint)
        throw std::invalid_argument("deficiency_small_r_exponents: fiber already self-adjoint");
    const double nu0 = geom.nu0();
    auto fit = [&](double order, double lo, double hi) {
        std::vector<double> xs, ys;
        const int pts = 9;
        for (int i = 0; i < pts; ++i) {
            const double r = lo * std::pow(hi / lo, double(i) / (pts - 1));
            xs.push_back(r);
            ys.push_back(bessel_k(order, r));
        }
        return log_log_slope(xs, ys);
    };
    return {fit(nu0, 1e-14, 1e-12), fit(nu0 + 1.0, 1e-6, 1e-3)};
}

// v+- (r, theta) = K_{nu0}(r) u_0(theta) -+ i K_{nu0+1}(r) u_{-1}(theta):
// the two-dimensional fields spanning the extension directions.
inline std::pair<PolarField, PolarField> sector_extension_pair(const SectorGeometry& geom,
                                                               const RadialGrid& grid,
                                                               int n_theta = 65)
{
    if (classify_self_adjoint(geom, 0) == FiberClass::SelfAdjoint)
        throw std::invalid_argument("sector_extension_pair: fiber already self-adjoint");
    PolarField vp(geom, grid, n_theta), vm(geom, grid, n_theta);
    const auto r = grid.nodes();
    const double nu0 = geom.nu0();
    for (int i = 0; i < grid.n; ++i) {
        const double k0 = bessel_k(nu0, r[i]);
        const double k1 = bessel_k(nu0 + 1.0, r[i]);
        for (int t = 0; t < n_theta; ++t) {
            const double th = vp.theta(t);
            const Spinor u0 = mode_function(0, geom, th);
            const Spinor um1 = mode_function(-1, geom, th);
            vp.at(i, t) = cplx(k0) * u0 - cplx(0.0, k1) * um1;
            vm.at(i, t) = cplx(k0) * u0 + cplx(0.0, k1) * um1;
        }
    }
    return {vp, vm};
}

// Robin ratio f_b / f_a of the extension generator at r_min (real:
// -i (1-gamma)/(1+gamma) = -tan(s/2)).  gamma = -1 is the a-Dirichlet
// limit; the tangent is clamped so that limit stays finite.
inline double extension_robin_ratio(const SectorGeometry& geom, double r_min,
                                    const ExtensionParameter& gamma)
{
    double t = std::tan(0.5 * gamma.s);
    if (!std::isfinite(t) || std::abs(t) > 1e6) t = t < 0.0 ? -1e6 : 1e6;
    const double nu0 = geom.nu0();
    return -t * bessel_k(nu0 + 1.0, r_min) / bessel_k(nu0, r_min);
}

enum class OuterBC {
    InfiniteMass,  // reflecting wall closure at r_max (default)
    None           // lattice simply ends one site earlier
};

// Coefficients of the staggered chain for one fiber.  Sites alternate
// a(m_0), b(x_1), a(m_1), b(x_2), ...; bond_up couples a(m_j) -- b(x_{j+1}),
// bond_down couples b(x_{j+1}) -- a(m_{j+1}).  V is evaluated at bond
// midpoints, which makes the matrix Hermitian without losing order.
struct FiberChain {
    int cells = 0;       // N - 1
    double sign = 1.0;   // (-1)^kappa
    double robin = 0.0;  // diagonal at a(m_0) from eliminating b(x_0)
    std::vector<double> bond_up;
    std::vector<double> bond_down;
};

inline FiberChain fiber_chain(double lambda, int kappa, const RadialGrid& grid,
                              double robin_ratio)
{
    const double h = grid.uniform_step();
    const int cells = grid.n - 1;
    FiberChain c;
    c.cells = cells;
    c.sign = kappa % 2 == 0 ? 1.0 : -1.0;
    auto V = [&](double r) { return lambda / (2.0 * r); };
    c.bond_up.resize(cells);
    c.bond_down.resize(cells - 1);
    for (int j = 0; j < cells; ++j) {
        const double m_j = grid.r_min + (j + 0.5) * h;
        c.bond_up[j] = c.sign * (1.0 / h + 0.5 * V(m_j + 0.25 * h));
        if (j + 1 < cells)
            c.bond_down[j] = c.sign * (-1.0 / h + 0.5 * V(m_j + 0.5 * h + 0.25 * h));
    }
    const double m_0 = grid.r_min + 0.5 * h;
    c.robin = robin_ratio * c.sign * (-1.0 / h + 0.5 * V(m_0 - 0.25 * h));
    return c;
}

inline BandedSymMatrix chain_to_matrix(const FiberChain& c, OuterBC bc)
{
    const int dim = bc == OuterBC::InfiniteMass ? 2 * c.cells : 2 * c.cells - 1;
    BandedSymMatrix m(dim, 1);
    if (c.robin != 0.0) m.set(0, 0, c.robin);
    for (int j = 0; j < c.cells; ++j) {
        const int a_site = 2 * j, b_site = 2 * j + 1;
        if (b_site < dim) m.set(a_site, b_site, c.bond_up[j]);
        if (j + 1 < c.cells && b_site + 1 < dim)
            m.set(b_site, b_site + 1, c.bond_down[j]);
    }
    return m;
}

// Discrete fiber matrix for a self-adjoint channel.  Hermitian by
// construction; block off-diagonal in the two components, so the m = 0
// spectrum comes in exact +- pairs.
inline BandedSymMatrix fiber_matrix(const FiberOperator& op, const RadialGrid& grid,
                                    OuterBC bc = OuterBC::InfiniteMass)
{
    if (classify_self_adjoint(op.geometry, op.kappa) != FiberClass::SelfAdjoint)
        throw std::invalid_argument(
            "fiber_matrix: channel requires an ExtensionParameter; use fiber_matrix_extended");
    return chain_to_matrix(fiber_chain(op.lambda, op.kappa, grid, 0.0), bc);
}

// kappa = 0 channel of a non-convex sector with the gamma extension
// encoded through the Robin coupling at r_min.
inline BandedSymMatrix fiber_matrix_extended(const SectorGeometry& geom,
                                             const RadialGrid& grid,
                                             const ExtensionParameter& gamma,
                                             OuterBC bc = OuterBC::InfiniteMass)
{
    if (classify_self_adjoint(geom, 0) == FiberClass::SelfAdjoint)
        throw std::invalid_argument("fiber_matrix_extended: fiber already self-adjoint");
    const double rho = extension_robin_ratio(geom, grid.r_min, gamma);
    return chain_to_matrix(fiber_chain(lambda_kappa(0, geom), 0, grid, rho), bc);
}

}  // namespace sectordirac
