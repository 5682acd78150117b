#pragma once

// Sector and polygon geometry.  A sector is described by its half-aperture
// omega (and an optional rotation); polygons map each corner onto the
// sector model with omega = half the interior angle.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sector_dirac/spinor.hpp"

namespace sectordirac {

struct SectorGeometry {
    double omega;        // half-aperture, strictly inside (0, pi)
    double theta0 = 0.0; // rotation of the bisector

    explicit SectorGeometry(double omega_, double theta0_ = 0.0)
        : omega(omega_), theta0(theta0_)
    {
        if (!(omega > 0.0 && omega < pi))
            throw std::invalid_argument("SectorGeometry: omega must lie in (0, pi)");
    }

    bool convex() const { return omega <= 0.5 * pi; }
    double lambda0() const { return pi / (2.0 * omega); }
    double nu0() const { return (pi - 2.0 * omega) / (4.0 * omega); }
};

struct Vec2 {
    double x;
    double y;
};

struct PolygonCorner {
    double interior_angle;  // radians, in (0, 2 pi)
    double half_aperture;   // interior_angle / 2
    bool reflex;
};

enum class PolygonClass { SelfAdjoint, ExtensionsRequired };

struct PolygonClassification {
    PolygonClass kind;
    int extension_count;  // one unit-circle parameter per reflex corner
    std::vector<PolygonCorner> corners;
};

// Half-apertures at (or just above) the convexity boundary count as
// convex; the sector result covers the closed interval (0, pi/2].
inline constexpr double convexity_angle_tol = 1e-12;

class PolygonDomain {
public:
    // Vertices of a simple polygon.  Orientation is normalized to
    // counterclockwise so outward normals have a fixed sign convention.
    explicit PolygonDomain(std::vector<Vec2> vertices) : verts_(std::move(vertices))
    {
        if (verts_.size() < 3)
            throw std::invalid_argument("PolygonDomain: need at least 3 vertices");
        if (signed_area() < 0.0) std::reverse(verts_.begin(), verts_.end());
        if (!is_simple())
            throw std::invalid_argument("PolygonDomain: polygon is self-intersecting");
        compute_corners();
    }

    const std::vector<Vec2>& vertices() const { return verts_; }
    size_t edge_count() const { return verts_.size(); }

    // Outward unit normal of edge i (from vertex i to vertex i+1).
    UnitVector2 outward_normal(size_t edge) const
    {
        if (edge >= verts_.size())
            throw std::out_of_range("PolygonDomain: edge index out of range");
        const Vec2& p = verts_[edge];
        const Vec2& q = verts_[(edge + 1) % verts_.size()];
        const double dx = q.x - p.x, dy = q.y - p.y;
        const double len = std::hypot(dx, dy);
        if (len == 0.0) throw std::invalid_argument("PolygonDomain: zero-length edge");
        return {dy / len, -dx / len};
    }

    const std::vector<PolygonCorner>& corners() const { return corners_; }

    double signed_area() const
    {
        double s = 0.0;
        const size_t n = verts_.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec2& p = verts_[i];
            const Vec2& q = verts_[(i + 1) % n];
            s += p.x * q.y - q.x * p.y;
        }
        return 0.5 * s;
    }

private:
    std::vector<Vec2> verts_;
    std::vector<PolygonCorner> corners_;

    void compute_corners()
    {
        const size_t n = verts_.size();
        corners_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            const Vec2& a = verts_[(i + n - 1) % n];
            const Vec2& b = verts_[i];
            const Vec2& c = verts_[(i + 1) % n];
            const double ux = b.x - a.x, uy = b.y - a.y;
            const double vx = c.x - b.x, vy = c.y - b.y;
            const double cross = ux * vy - uy * vx;
            const double dot = ux * vx + uy * vy;
            const double turn = std::atan2(cross, dot);
            if (std::abs(cross) < 1e-14 * (std::hypot(ux, uy) * std::hypot(vx, vy)))
                throw std::invalid_argument("PolygonDomain: degenerate (collinear) vertex");
            const double interior = pi - turn;
            corners_[i].interior_angle = interior;
            corners_[i].half_aperture = 0.5 * interior;
            corners_[i].reflex =
                corners_[i].half_aperture > 0.5 * pi + convexity_angle_tol;
        }
    }

    static bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d)
    {
        auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
            const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
            return (v > 0.0) - (v < 0.0);
        };
        const int o1 = orient(a, b, c), o2 = orient(a, b, d);
        const int o3 = orient(c, d, a), o4 = orient(c, d, b);
        return o1 != o2 && o3 != o4;
    }

    bool is_simple() const
    {
        const size_t n = verts_.size();
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                // Skip adjacent edges (they share a vertex).
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                if (segments_cross(verts_[i], verts_[(i + 1) % n],
                                   verts_[j], verts_[(j + 1) % n]))
                    return false;
            }
        }
        return true;
    }
};

inline std::vector<double> corner_half_apertures(const PolygonDomain& poly)
{
    std::vector<double> out;
    out.reserve(poly.corners().size());
    for (const auto& c : poly.corners()) out.push_back(c.half_aperture);
    return out;
}

// Self-adjoint iff every corner is convex; otherwise one unit-circle
// extension parameter per reflex corner (localization heuristic).
inline PolygonClassification classify_polygon(const PolygonDomain& poly)
{
    PolygonClassification result;
    result.corners = poly.corners();
    int reflex = 0;
    for (const auto& c : result.corners) reflex += c.reflex ? 1 : 0;
    result.extension_count = reflex;
    result.kind = reflex == 0 ? PolygonClass::SelfAdjoint : PolygonClass::ExtensionsRequired;
    return result;
}

inline Mat2 edge_boundary_matrix(const PolygonDomain& poly, size_t edge)
{
    return boundary_matrix(poly.outward_normal(edge));
}

}  // namespace sectordirac
