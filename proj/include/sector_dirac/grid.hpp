#pragma once

// Radial grids on (0, infinity) truncated to [r_min, r_max], uniform or
// log spaced, with trapezoid weights and high-order derivatives.  The
// L^2(r dr) measure is carried explicitly by the weight helpers.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace sectordirac {

enum class GridSpacing { Uniform, Log };

struct RadialGrid {
    double r_min;
    double r_max;
    int n;
    GridSpacing spacing = GridSpacing::Uniform;

    RadialGrid(double r_min_, double r_max_, int n_,
               GridSpacing spacing_ = GridSpacing::Uniform)
        : r_min(r_min_), r_max(r_max_), n(n_), spacing(spacing_)
    {
        if (!(r_min > 0.0 && r_min < r_max))
            throw std::invalid_argument("RadialGrid: need 0 < r_min < r_max");
        if (n < 16) throw std::invalid_argument("RadialGrid: need n >= 16");
    }

    std::vector<double> nodes() const
    {
        std::vector<double> r(n);
        if (spacing == GridSpacing::Uniform) {
            const double h = (r_max - r_min) / (n - 1);
            for (int i = 0; i < n; ++i) r[i] = r_min + h * i;
        } else {
            const double s0 = std::log(r_min), s1 = std::log(r_max);
            const double h = (s1 - s0) / (n - 1);
            for (int i = 0; i < n; ++i) r[i] = std::exp(s0 + h * i);
        }
        return r;
    }

    // Trapezoid weights in the radial coordinate (dr measure).
    std::vector<double> weights() const
    {
        const auto r = nodes();
        std::vector<double> w(n, 0.0);
        for (int i = 0; i + 1 < n; ++i) {
            const double h = r[i + 1] - r[i];
            w[i] += 0.5 * h;
            w[i + 1] += 0.5 * h;
        }
        return w;
    }

    double uniform_step() const
    {
        if (spacing != GridSpacing::Uniform)
            throw std::invalid_argument("RadialGrid: uniform spacing required here");
        return (r_max - r_min) / (n - 1);
    }
};

// Discrete L^2(r dr) norm of samples on the grid.
inline double norm_rdr(const RadialGrid& grid, const std::vector<std::complex<double>>& a)
{
    const auto r = grid.nodes();
    const auto w = grid.weights();
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i) s += w[i] * r[i] * std::norm(a[i]);
    return std::sqrt(s);
}

// Discrete L^2(dr) norm; with f = sqrt(r) a the two norms agree exactly.
inline double norm_dr(const RadialGrid& grid, const std::vector<std::complex<double>>& f)
{
    const auto w = grid.weights();
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i) s += w[i] * std::norm(f[i]);
    return std::sqrt(s);
}

// 4th-order derivative d/dr of sampled values; log grids differentiate in
// s = log r and divide by r.
template <class T>
std::vector<T> radial_derivative(const RadialGrid& grid, const std::vector<T>& f)
{
    const int n = grid.n;
    if (int(f.size()) != n) throw std::invalid_argument("radial_derivative: size mismatch");
    const bool logsp = grid.spacing == GridSpacing::Log;
    const double h = logsp ? (std::log(grid.r_max) - std::log(grid.r_min)) / (n - 1)
                           : (grid.r_max - grid.r_min) / (n - 1);
    std::vector<T> d(n);
    auto stencil = [&](int i) -> T {
        if (i >= 2 && i <= n - 3)
            return (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
        if (i <= 1)
            return (-25.0 * f[i] + 48.0 * f[i + 1] - 36.0 * f[i + 2] + 16.0 * f[i + 3] -
                    3.0 * f[i + 4]) /
                   (12.0 * h);
        return (25.0 * f[i] - 48.0 * f[i - 1] + 36.0 * f[i - 2] - 16.0 * f[i - 3] +
                3.0 * f[i - 4]) /
               (12.0 * h);
    };
    if (!logsp) {
        for (int i = 0; i < n; ++i) d[i] = stencil(i);
    } else {
        const auto r = grid.nodes();
        for (int i = 0; i < n; ++i) d[i] = stencil(i) * (1.0 / r[i]);
    }
    return d;
}

}  // namespace sectordirac
