#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gsbq/grid.hpp"

namespace testutil {

inline double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double sym_draw(std::mt19937_64& rng) { return 2.0 * unit_draw(rng) - 1.0; }

// Smooth random field: a handful of low modes with seeded coefficients.
inline gsbq::RealField random_smooth_field(const gsbq::GridPtr& grid, std::uint64_t seed,
                                           double amplitude = 1.0, int max_mode = 12) {
    std::mt19937_64 rng(seed);
    gsbq::RealField f = gsbq::make_field(grid);
    const double L = grid->half_length;
    for (int m = 1; m <= max_mode; ++m) {
        const double a = sym_draw(rng) / (1.0 + m * m);
        const double b = sym_draw(rng) / (1.0 + m * m);
        const double k = 3.14159265358979323846 * m / L;
        for (std::size_t j = 0; j < grid->n_points; ++j) {
            const double x = grid->nodes[j];
            f.samples[j] += amplitude * (a * std::cos(k * x) + b * std::sin(k * x));
        }
    }
    return f;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s = std::max(s, std::abs(a[j] - b[j]));
    return s;
}

inline double sup_diff(const gsbq::RealField& a, const gsbq::RealField& b) {
    return sup_diff(a.samples, b.samples);
}

inline double sup_abs_of(const std::vector<double>& a) {
    double s = 0;
    for (double x : a) s = std::max(s, std::abs(x));
    return s;
}

}  // namespace testutil
