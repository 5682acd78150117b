#pragma once

// Pointwise spinor fields sampled in polar coordinates over a sector,
// and the unitary that maps fields on rotated sectors back to the
// reference sector.

#include <stdexcept>
#include <vector>

#include "sector_dirac/geometry.hpp"
#include "sector_dirac/grid.hpp"
#include "sector_dirac/spinor.hpp"

namespace sectordirac {

struct PolarField {
    SectorGeometry geom;
    RadialGrid grid;
    int n_theta;
    std::vector<Spinor> values;  // values[r_index * n_theta + theta_index]

    PolarField(const SectorGeometry& g, const RadialGrid& gr, int ntheta)
        : geom(g), grid(gr), n_theta(ntheta),
          values(size_t(gr.n) * ntheta, Spinor{})
    {
        if (n_theta < 2) throw std::invalid_argument("PolarField: need >= 2 angles");
    }

    // Angle of column t, measured about the sector bisector theta0.
    double theta(int t) const
    {
        return geom.theta0 - geom.omega + 2.0 * geom.omega * t / (n_theta - 1);
    }

    Spinor& at(int ri, int ti) { return values[size_t(ri) * n_theta + ti]; }
    const Spinor& at(int ri, int ti) const { return values[size_t(ri) * n_theta + ti]; }

    // L^2 norm with the polar measure r dr dtheta, trapezoid in both
    // directions.
    double norm() const
    {
        const auto r = grid.nodes();
        const auto wr = grid.weights();
        const double ht = 2.0 * geom.omega / (n_theta - 1);
        double s = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            double row = 0.0;
            for (int t = 0; t < n_theta; ++t) {
                const double wt = (t == 0 || t == n_theta - 1) ? 0.5 * ht : ht;
                row += wt * values[size_t(i) * n_theta + t].norm2();
            }
            s += wr[i] * r[i] * row;
        }
        return std::sqrt(s);
    }
};

// (U_theta0 v)(x) = exp(i theta0 sigma3 / 2) v(R(theta0) x): fields
// sampled on the rotated sector map to the reference sector sample by
// sample, each multiplied by a constant phase matrix.  Exactly unitary
// on the sampled norm.
inline PolarField rotate_field(double theta0, const PolarField& field)
{
    if (std::abs(field.geom.theta0 - theta0) > 1e-12)
        throw std::invalid_argument("rotate_field: field not sampled on the rotated sector");
    PolarField out(SectorGeometry(field.geom.omega, 0.0), field.grid, field.n_theta);
    const Mat2 phase = half_angle_phase(theta0);
    for (size_t k = 0; k < field.values.size(); ++k) out.values[k] = phase * field.values[k];
    return out;
}

}  // namespace sectordirac
