#include <catch2/catch_amalgamated.hpp>

#include "sector_dirac/geometry.hpp"

using namespace sectordirac;

namespace {

PolygonDomain unit_square()
{
    return PolygonDomain({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

PolygonDomain l_shape()
{
    return PolygonDomain({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

}  // namespace

TEST_CASE("sector geometry derived quantities")
{
    SectorGeometry g(2.0);
    CHECK(g.nu0() == Catch::Approx((pi - 4.0) / 8.0).margin(1e-15));
    CHECK(g.lambda0() == Catch::Approx(pi / 4.0).margin(1e-15));
    // nu0 = (lambda0 - 1) / 2
    CHECK(std::abs(g.nu0() - 0.5 * (g.lambda0() - 1.0)) < 1e-15);
    CHECK_FALSE(g.convex());
    CHECK(SectorGeometry(0.5 * pi).convex());
    CHECK_THROWS_AS(SectorGeometry(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SectorGeometry(pi), std::invalid_argument);
    CHECK_THROWS_AS(SectorGeometry(4.0), std::invalid_argument);
}

TEST_CASE("corner half-apertures")
{
    SECTION("unit square")
    {
        const auto h = corner_half_apertures(unit_square());
        REQUIRE(h.size() == 4);
        for (double v : h) CHECK(v == Catch::Approx(pi / 4.0).margin(1e-12));
    }
    SECTION("equilateral triangle")
    {
        PolygonDomain tri({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
        const auto h = corner_half_apertures(tri);
        REQUIRE(h.size() == 3);
        for (double v : h) CHECK(v == Catch::Approx(pi / 6.0).margin(1e-12));
    }
    SECTION("L-shape contains one reflex corner at 3 pi / 4")
    {
        const auto h = corner_half_apertures(l_shape());
        int reflex = 0;
        for (double v : h) {
            if (v > 0.5 * pi) {
                ++reflex;
                CHECK(v == Catch::Approx(0.75 * pi).margin(1e-12));
            }
        }
        CHECK(reflex == 1);
    }
    SECTION("collinear triple rejected")
    {
        CHECK_THROWS_AS(PolygonDomain({{0, 0}, {1, 0}, {2, 0}, {1, 1}}),
                        std::invalid_argument);
    }
}

TEST_CASE("polygon classification")
{
    CHECK(classify_polygon(unit_square()).kind == PolygonClass::SelfAdjoint);

    PolygonDomain pentagon({{1.0, 0.0},
                            {0.309016994374947, 0.951056516295154},
                            {-0.809016994374947, 0.587785252292473},
                            {-0.809016994374948, -0.587785252292473},
                            {0.309016994374947, -0.951056516295154}});
    CHECK(classify_polygon(pentagon).kind == PolygonClass::SelfAdjoint);

    const auto lcls = classify_polygon(l_shape());
    CHECK(lcls.kind == PolygonClass::ExtensionsRequired);
    CHECK(lcls.extension_count == 1);

    CHECK_THROWS_AS(PolygonDomain({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                    std::invalid_argument);  // bow-tie
}

TEST_CASE("polygon invariants")
{
    SECTION("exterior angles sum to 2 pi")
    {
        const PolygonDomain sq = unit_square();
        const PolygonDomain ell = l_shape();
        for (const PolygonDomain* poly : {&sq, &ell}) {
            double s = 0.0;
            for (const auto& c : poly->corners()) s += pi - c.interior_angle;
            CHECK(s == Catch::Approx(2.0 * pi).margin(1e-10));
        }
    }
    SECTION("classification invariant under global rotation")
    {
        const double t = 0.7;
        auto rotate = [&](std::vector<Vec2> vs) {
            for (auto& v : vs) {
                const double x = std::cos(t) * v.x - std::sin(t) * v.y;
                const double y = std::sin(t) * v.x + std::cos(t) * v.y;
                v = {x, y};
            }
            return vs;
        };
        PolygonDomain rotated_l(rotate(l_shape().vertices()));
        CHECK(classify_polygon(rotated_l).kind == PolygonClass::ExtensionsRequired);
        CHECK(classify_polygon(rotated_l).extension_count == 1);
        PolygonDomain rotated_sq(rotate(unit_square().vertices()));
        CHECK(classify_polygon(rotated_sq).kind == PolygonClass::SelfAdjoint);
    }
    SECTION("clockwise input is normalized")
    {
        PolygonDomain cw({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
        CHECK(cw.signed_area() > 0.0);
        CHECK(classify_polygon(cw).kind == PolygonClass::SelfAdjoint);
    }
}

TEST_CASE("edge boundary matrices")
{
    const auto sq = unit_square();
    SECTION("bottom edge has normal (0,-1) and the right matrix")
    {
        // edge 0 runs from (0,0) to (1,0)
        const UnitVector2 n = sq.outward_normal(0);
        CHECK(n.vx == Catch::Approx(0.0).margin(1e-15));
        CHECK(n.vy == Catch::Approx(-1.0).margin(1e-15));
        const Mat2 B = edge_boundary_matrix(sq, 0);
        const Mat2 expect = cplx(0, -1) * (sigma3 * pauli_dot(n));
        CHECK((B - expect).max_abs() < 1e-15);
        CHECK((B * B - identity2).max_abs() < 1e-14);
    }
    SECTION("all edges carry distinct matrices with eigenvalues {-1, +1}")
    {
        for (size_t e = 0; e < sq.edge_count(); ++e) {
            const Mat2 B = edge_boundary_matrix(sq, e);
            CHECK(std::abs(B.trace()) < 1e-14);
            CHECK(std::abs(B.det() - cplx(-1.0)) < 1e-14);
            for (size_t f = e + 1; f < sq.edge_count(); ++f)
                CHECK((B - edge_boundary_matrix(sq, f)).max_abs() > 0.5);
        }
        // opposite edges differ by a sign
        CHECK((edge_boundary_matrix(sq, 0) + edge_boundary_matrix(sq, 2)).max_abs() <
              1e-14);
    }
    SECTION("edge index out of range")
    {
        CHECK_THROWS_AS(edge_boundary_matrix(sq, 17), std::out_of_range);
    }
}
