#pragma once

// Full massive operator on the truncated sector: radial fiber chains on
// the diagonal, the mass times the sigma3 mode-coupling matrix across
// channels.  Channel kappa holds the pair of modes (u_kappa, u_{-(kappa+1)}),
// so n_modes fibers cover the mode window {-n_modes, ..., n_modes - 1}.
//
// Layout: radial cell j carries the n_modes a-slot values at midpoint m_j
// followed by the n_modes b-slot values at node x_{j+1}; all couplings
// reach at most one cell over, giving half-bandwidth 2 n_modes - 1.
// sigma3 couples a-type and b-type slots at staggered positions; those
// entries are split evenly over the two adjacent sites, which is the
// second-order interpolation and keeps the matrix symmetric entry by
// entry.

#include <optional>
#include <stdexcept>

#include "sector_dirac/eigen_solve.hpp"
#include "sector_dirac/radial.hpp"

namespace sectordirac {

struct SectorAssembly {
    SectorGeometry geom;
    double mass;
    std::optional<ExtensionParameter> gamma;
    int n_modes;
    RadialGrid grid;
    int cells;
    int slots;  // 2 * n_modes per cell
    BandedSymMatrix matrix;
    BandedSymMatrix sigma3_form;  // quadratic form v^T S v for <sigma3 v, v>

    int site(int cell, int slot) const { return cell * slots + slot; }
};

// Mode index carried by a slot: a-slots hold u_kappa, b-slots u_{-(kappa+1)}.
inline int slot_mode(int slot, int n_modes)
{
    return slot < n_modes ? slot : -(slot - n_modes) - 1;
}

inline SectorAssembly assemble_sector(const SectorGeometry& geom, double mass,
                                      std::optional<ExtensionParameter> gamma,
                                      int n_modes, const RadialGrid& grid,
                                      OuterBC bc = OuterBC::InfiniteMass)
{
    if (n_modes < 2) throw std::invalid_argument("assemble_sector: n_modes >= 2");
    if (grid.spacing != GridSpacing::Uniform)
        throw std::invalid_argument("assemble_sector: uniform radial grid required");
    const bool needs_gamma = classify_self_adjoint(geom, 0) == FiberClass::DeficiencyOne;
    if (needs_gamma && !gamma)
        throw std::invalid_argument(
            "assemble_sector: omega > pi/2 requires an extension parameter gamma");
    if (bc != OuterBC::InfiniteMass)
        throw std::invalid_argument("assemble_sector: assemblies use the wall closure");

    const int K = n_modes;
    const int cells = grid.n - 1;
    const int slots = 2 * K;
    const int dim = cells * slots;
    const int kd = 2 * K - 1;

    SectorAssembly out{geom, mass, gamma, n_modes, grid, cells, slots,
                       BandedSymMatrix(dim, kd), BandedSymMatrix(dim, kd)};
    BandedSymMatrix& m = out.matrix;
    BandedSymMatrix& s3 = out.sigma3_form;

    // kinetic fiber chains
    for (int kappa = 0; kappa < K; ++kappa) {
        const double rho = (needs_gamma && kappa == 0)
                               ? extension_robin_ratio(geom, grid.r_min, *gamma)
                               : 0.0;
        const FiberChain chain = fiber_chain(lambda_kappa(kappa, geom), kappa, grid, rho);
        const int a_slot = kappa, b_slot = K + kappa;
        if (chain.robin != 0.0) m.add(out.site(0, a_slot), out.site(0, a_slot), chain.robin);
        for (int j = 0; j < cells; ++j) {
            m.add(out.site(j, a_slot), out.site(j, b_slot), chain.bond_up[j]);
            if (j + 1 < cells)
                m.add(out.site(j, b_slot), out.site(j + 1, a_slot), chain.bond_down[j]);
        }
    }

    // sigma3 coupling; entries go into the mass matrix scaled by `mass`
    // and into the plain quadratic form once
    auto add_coupling = [&](int i, int j, double v) {
        if (mass != 0.0) m.add(i, j, mass * v);
        s3.add(i, j, v);
    };
    for (int p = 0; p < slots; ++p) {
        const int mode_p = slot_mode(p, K);
        for (int q = p + 1; q < slots; ++q) {
            const int mode_q = slot_mode(q, K);
            const double cpl = sigma3_coupling(mode_p, mode_q);
            if (cpl == 0.0) continue;
            const bool p_is_a = p < K, q_is_a = q < K;
            if (p_is_a == q_is_a) {
                // same staggering: pointwise coupling cell by cell
                for (int j = 0; j < cells; ++j)
                    add_coupling(out.site(j, p), out.site(j, q), cpl);
            } else {
                // a at midpoint m_j pairs with b at nodes x_j, x_{j+1}:
                // half weight on each adjacent site
                const int a_slot = p_is_a ? p : q;
                const int b_slot = p_is_a ? q : p;
                for (int j = 0; j < cells; ++j) {
                    add_coupling(out.site(j, a_slot), out.site(j, b_slot), 0.5 * cpl);
                    if (j > 0)
                        add_coupling(out.site(j, a_slot), out.site(j - 1, b_slot),
                                     0.5 * cpl);
                }
            }
        }
    }
    return out;
}

// <sigma3 v, v> in the assembled coordinates.
inline double sigma3_expectation(const SectorAssembly& a, const std::vector<double>& v)
{
    std::vector<double> sv;
    a.sigma3_form.matvec(v, sv);
    return detail::dot(sv, v);
}

// Eigenvalues nearest zero with the run parameters embedded in the report.
inline SpectralReport sector_spectrum(const SectorAssembly& a, int k,
                                      EigenSolveOptions opts = {})
{
    SpectralReport rep = eigen_solve(a.matrix, k, opts);
    rep.params.omega = a.geom.omega;
    rep.params.mass = a.mass;
    if (a.gamma) rep.params.gamma_phase = a.gamma->s;
    rep.params.n_modes = a.n_modes;
    rep.params.r_min = a.grid.r_min;
    rep.params.r_max = a.grid.r_max;
    rep.params.n_r = a.grid.n;
    return rep;
}

}  // namespace sectordirac
