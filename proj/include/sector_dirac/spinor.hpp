#pragma once

// Exact 2x2 complex algebra: Pauli matrices, infinite-mass boundary
// matrices B_v = -i sigma3 (sigma.v), charge conjugation and the
// rotation matrices used to map rotated sectors back to the reference one.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>

namespace sectordirac {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

struct Spinor {
    cplx up{0.0, 0.0};
    cplx lo{0.0, 0.0};

    double norm2() const { return std::norm(up) + std::norm(lo); }
    Spinor operator+(const Spinor& o) const { return {up + o.up, lo + o.lo}; }
    Spinor operator-(const Spinor& o) const { return {up - o.up, lo - o.lo}; }
    Spinor operator*(cplx s) const { return {s * up, s * lo}; }
};

inline Spinor operator*(cplx s, const Spinor& u) { return u * s; }

// <u, v> with the physics convention: antilinear in the first slot.
inline cplx inner(const Spinor& u, const Spinor& v)
{
    return std::conj(u.up) * v.up + std::conj(u.lo) * v.lo;
}

// Row-major [[a, b], [c, d]].
struct Mat2 {
    cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};

    Spinor operator*(const Spinor& u) const
    {
        return {a * u.up + b * u.lo, c * u.up + d * u.lo};
    }
    Mat2 operator*(const Mat2& m) const
    {
        return {a * m.a + b * m.c, a * m.b + b * m.d,
                c * m.a + d * m.c, c * m.b + d * m.d};
    }
    Mat2 operator+(const Mat2& m) const { return {a + m.a, b + m.b, c + m.c, d + m.d}; }
    Mat2 operator-(const Mat2& m) const { return {a - m.a, b - m.b, c - m.c, d - m.d}; }
    Mat2 operator*(cplx s) const { return {s * a, s * b, s * c, s * d}; }

    Mat2 adjoint() const
    {
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }
    cplx trace() const { return a + d; }
    cplx det() const { return a * d - b * c; }
    double max_abs() const
    {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }
};

inline Mat2 operator*(cplx s, const Mat2& m) { return m * s; }

inline const Mat2 sigma1{cplx(0), cplx(1), cplx(1), cplx(0)};
inline const Mat2 sigma2{cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)};
inline const Mat2 sigma3{cplx(1), cplx(0), cplx(0), cplx(-1)};
inline const Mat2 identity2{cplx(1), cplx(0), cplx(0), cplx(1)};

struct UnitVector2 {
    double vx;
    double vy;

    UnitVector2(double x, double y) : vx(x), vy(y)
    {
        if (std::abs(vx * vx + vy * vy - 1.0) > 1e-14)
            throw std::invalid_argument("UnitVector2: |v| != 1");
    }
    static UnitVector2 from_angle(double theta)
    {
        return {std::cos(theta), std::sin(theta)};
    }
};

inline UnitVector2 e_rad(double theta) { return UnitVector2::from_angle(theta); }
inline UnitVector2 e_ang(double theta)
{
    return {-std::sin(theta), std::cos(theta)};
}

// sigma.a for a 2- or 3-vector.
inline Mat2 pauli_dot(std::span<const double> a)
{
    if (a.size() == 2)
        return sigma1 * cplx(a[0]) + sigma2 * cplx(a[1]);
    if (a.size() == 3)
        return sigma1 * cplx(a[0]) + sigma2 * cplx(a[1]) + sigma3 * cplx(a[2]);
    throw std::invalid_argument("pauli_dot: need 2 or 3 components");
}

inline Mat2 pauli_dot(const UnitVector2& v)
{
    const double a[2] = {v.vx, v.vy};
    return pauli_dot(std::span<const double>(a, 2));
}

// B_v = -i sigma3 (sigma.v).  Hermitian, B_v^2 = 1, Sp(B_v) = {+-1}.
inline Mat2 boundary_matrix(const UnitVector2& v)
{
    return cplx(0, -1) * (sigma3 * pauli_dot(v));
}

// Normalized spinor spanning ker(B_v - sign).  Phase convention: first
// component real positive.
inline Spinor bc_eigenvector(const UnitVector2& v, int sign)
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("bc_eigenvector: sign must be +-1");
    // B_v = [[0, beta], [conj(beta), 0]] with beta = -v_y - i v_x, |beta| = 1.
    const cplx beta(-v.vy, -v.vx);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {cplx(inv_sqrt2), cplx(double(sign)) * std::conj(beta) * inv_sqrt2};
}

// C u = sigma1 conj(u).  Antilinear, C^2 = 1.
inline Spinor charge_conjugate(const Spinor& u)
{
    return {std::conj(u.lo), std::conj(u.up)};
}

// exp(-i sigma2 t): the rotation matrix [[cos t, -sin t], [sin t, cos t]].
inline Mat2 rotation_matrix(double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    return {cplx(c), cplx(-s), cplx(s), cplx(c)};
}

// exp(i (theta/2) sigma3) = diag(e^{i theta/2}, e^{-i theta/2}).
inline Mat2 half_angle_phase(double theta)
{
    return {std::exp(cplx(0, 0.5 * theta)), cplx(0),
            cplx(0), std::exp(cplx(0, -0.5 * theta))};
}

}  // namespace sectordirac
