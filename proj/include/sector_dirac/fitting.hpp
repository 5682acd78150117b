#pragma once

// Log-log least-squares slope, used to recover power-law exponents near
// the corner singularity.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sectordirac {

inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("log_log_slope: bad input");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sectordirac
