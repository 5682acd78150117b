#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "sector_dirac/angular.hpp"

using namespace sectordirac;

TEST_CASE("lambda_kappa values and antisymmetry")
{
    SectorGeometry half(0.5 * pi), third(pi / 3.0);
    CHECK(lambda_kappa(0, half) == Catch::Approx(1.0).margin(1e-15));
    CHECK(lambda_kappa(0, third) == Catch::Approx(1.5).margin(1e-15));
    CHECK(lambda_kappa(1, half) == Catch::Approx(3.0).margin(1e-15));
    CHECK(lambda_kappa(-2, half) == Catch::Approx(-3.0).margin(1e-15));
    // strictly increasing, lambda_{-(k+1)} = -lambda_k
    SectorGeometry g(1.3);
    for (int k = -6; k < 6; ++k) {
        CHECK(lambda_kappa(k + 1, g) > lambda_kappa(k, g));
        CHECK(std::abs(lambda_kappa(-(k + 1), g) + lambda_kappa(k, g)) < 1e-14);
    }
}

TEST_CASE("mode functions are orthonormal")
{
    SectorGeometry g(2.0);
    const QuadRule rule = angular_rule(g, 4);
    for (int k = -3; k <= 3; ++k) {
        for (int j = -3; j <= 3; ++j) {
            const cplx ip = angular_inner(
                [&](double t) { return mode_function(j, g, t); },
                [&](double t) { return mode_function(k, g, t); }, rule);
            const double expect = (j == k) ? 1.0 : 0.0;
            CHECK(std::abs(ip - cplx(expect)) < 1e-12);
        }
    }
}

TEST_CASE("mode functions satisfy both boundary conditions")
{
    SectorGeometry g(0.7 * pi);
    for (int k : {0, 1, -1, 3}) {
        const Spinor up = mode_function(k, g, g.omega);
        const Spinor lo = mode_function(k, g, -g.omega);
        const Mat2 b_plus = boundary_matrix(e_ang(g.omega));
        const Mat2 b_minus = cplx(-1.0) * boundary_matrix(e_ang(-g.omega));
        const Spinor rp = b_plus * up - up;
        const Spinor rm = b_minus * lo - lo;
        CHECK(std::sqrt(rp.norm2()) < 1e-13);
        CHECK(std::sqrt(rm.norm2()) < 1e-13);
    }
}

TEST_CASE("mode pairing u_{-(k+1)} = (-1)^k i (sigma.e_rad) u_k")
{
    SectorGeometry g(1.2);
    const int k = 2;
    const double theta = 0.4;
    const Spinor lhs = mode_function(-(k + 1), g, theta);
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    const Spinor rhs = cplx(0, sgn) * (pauli_dot(e_rad(theta)) * mode_function(k, g, theta));
    CHECK(std::abs(lhs.up - rhs.up) < 1e-13);
    CHECK(std::abs(lhs.lo - rhs.lo) < 1e-13);
}

TEST_CASE("mode gauge and pointwise norm")
{
    SectorGeometry g(0.9);
    for (int k : {-2, 0, 5}) {
        const Spinor u0 = mode_function(k, g, 0.0);
        CHECK(u0.up.real() == Catch::Approx(1.0 / (2.0 * std::sqrt(g.omega))).margin(1e-15));
        CHECK(std::abs(u0.up.imag()) < 1e-15);
        CHECK(mode_function(k, g, 0.3).norm2() ==
              Catch::Approx(1.0 / (2.0 * g.omega)).margin(1e-14));
    }
    CHECK_THROWS_AS(mode_function(0, g, g.omega + 0.1), std::domain_error);
}

TEST_CASE("apply_K reproduces eigenvalues")
{
    SectorGeometry g(1.0);
    const int n = 512;
    std::vector<Spinor> u(n);
    for (int i = 0; i < n; ++i) {
        const double theta = -g.omega + 2.0 * g.omega * i / (n - 1);
        u[i] = mode_function(0, g, theta);
    }
    const auto ku = apply_K(u, g);
    const double lam = lambda_kappa(0, g);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(ku[i].up - lam * u[i].up));
        worst = std::max(worst, std::abs(ku[i].lo - lam * u[i].lo));
    }
    CHECK(worst / std::abs(lam) * std::sqrt(2.0 * g.omega) < 1e-8);

    std::vector<Spinor> tiny(4);
    CHECK_THROWS_AS(apply_K(tiny, g), std::invalid_argument);
}

TEST_CASE("apply_K anticommutes with sigma.e_rad")
{
    SectorGeometry g(1.1);
    const int n = 1024;
    std::vector<Spinor> u(n), su(n);
    std::vector<double> thetas(n);
    for (int i = 0; i < n; ++i) {
        const double theta = -g.omega + 2.0 * g.omega * i / (n - 1);
        thetas[i] = theta;
        // smooth test field, no boundary condition needed for the algebra
        u[i] = {std::exp(cplx(0.0, 1.3 * theta)) * std::cos(theta),
                cplx(std::sin(0.7 * theta), 0.2)};
        su[i] = pauli_dot(e_rad(theta)) * u[i];
    }
    const auto k_su = apply_K(su, g);
    const auto k_u = apply_K(u, g);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const Spinor s_ku = pauli_dot(e_rad(thetas[i])) * k_u[i];
        worst = std::max(worst, std::abs(k_su[i].up + s_ku.up));
        worst = std::max(worst, std::abs(k_su[i].lo + s_ku.lo));
    }
    CHECK(worst < 1e-5);  // discretization error of the 4th-order stencil
}

TEST_CASE("apply_K symmetry defect vanishes under refinement")
{
    SectorGeometry g(0.8);
    auto defect = [&](int n) {
        std::vector<Spinor> u(n), v(n);
        for (int i = 0; i < n; ++i) {
            const double theta = -g.omega + 2.0 * g.omega * i / (n - 1);
            u[i] = mode_function(0, g, theta) + cplx(0.5) * mode_function(2, g, theta);
            v[i] = mode_function(-1, g, theta) + cplx(0, 0.3) * mode_function(1, g, theta);
        }
        const auto ku = apply_K(u, g);
        const auto kv = apply_K(v, g);
        const double h = 2.0 * g.omega / (n - 1);
        cplx s(0.0);
        for (int i = 0; i < n; ++i) {
            const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
            s += w * (inner(ku[i], v[i]) - inner(u[i], kv[i]));
        }
        return std::abs(s);
    };
    // mode-built fields cancel the boundary term analytically, so the
    // defect sits at roundoff already on coarse grids
    CHECK(defect(256) < 1e-10);
    CHECK(defect(1024) < 1e-10);
}

TEST_CASE("sigma3 coupling closed form matches the quadrature oracle")
{
    CHECK(sigma3_coupling(3, 3) == 0.0);
    CHECK(sigma3_coupling(-2, -2) == 0.0);
    CHECK(sigma3_coupling(0, 1) == Catch::Approx(2.0 / pi).margin(1e-15));
    CHECK(sigma3_coupling(0, 3) == Catch::Approx(-2.0 / (3.0 * pi)).margin(1e-15));

    for (double omega : {0.9, 2.2}) {
        SectorGeometry g(omega);
        const QuadRule rule = angular_rule(g, 6);
        for (int j = -4; j <= 4; ++j) {
            for (int k = -4; k <= 4; ++k) {
                const cplx oracle = angular_inner(
                    [&](double t) { return mode_function(j, g, t); },
                    [&](double t) { return sigma3 * mode_function(k, g, t); }, rule);
                CHECK(std::abs(oracle - cplx(sigma3_coupling(j, k))) < 1e-12);
            }
        }
    }
}

TEST_CASE("coupling matrix is symmetric with unit-approaching row sums")
{
    const int n_modes = 64;
    const auto m = sigma3_coupling_matrix(-n_modes, n_modes - 1);
    const int n = 2 * n_modes;
    for (int a = 0; a < n; ++a) {
        CHECK(m[size_t(a) * n + a] == 0.0);
        for (int b = 0; b < n; ++b)
            CHECK(m[size_t(a) * n + b] == Catch::Approx(m[size_t(b) * n + a]).margin(0.0));
    }
    // central row of Sigma^2: approaches 1 as the window grows
    const int mid = n / 2;
    double row_sum = 0.0;
    for (int b = 0; b < n; ++b) row_sum += m[size_t(mid) * n + b] * m[size_t(mid) * n + b];
    CHECK(row_sum >= 0.95);
    CHECK(row_sum < 1.0);
}

TEST_CASE("angular spectrum is symmetric about zero")
{
    SectorGeometry g(2.4);
    const int N = 12;
    std::multiset<double> spectrum;
    for (int k = -N; k < N; ++k) spectrum.insert(lambda_kappa(k, g));
    for (double lam : spectrum) {
        CHECK(spectrum.count(lam) >= 1);
        bool found = false;
        for (double other : spectrum)
            if (std::abs(other + lam) < 1e-12) { found = true; break; }
        CHECK(found);
    }
}
