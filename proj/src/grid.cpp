#include "gsbq/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gsbq/errors.hpp"
#include "gsbq/fft.hpp"
#include "gsbq/kernels.hpp"

namespace gsbq {

double Grid::xi_half(std::size_t k) const { return M_PI / half_length * static_cast<double>(k); }

GridPtr make_grid(double half_length, std::size_t n_points) {
    if (!(half_length > 0))
        throw NonPositiveLength("grid half-length must be positive, got " +
                                std::to_string(half_length));
    const bool pow2 = n_points >= 16 && (n_points & (n_points - 1)) == 0;
    if (!pow2)
        throw NotPowerOfTwo("grid size must be a power of two >= 16, got " +
                            std::to_string(n_points));

    auto g = std::make_shared<Grid>();
    g->half_length = half_length;
    g->n_points = n_points;
    g->dx = 2.0 * half_length / static_cast<double>(n_points);
    g->nodes.resize(n_points);
    g->wavenumbers.resize(n_points);
    const double dxi = M_PI / half_length;
    for (std::size_t j = 0; j < n_points; ++j) {
        g->nodes[j] = -half_length + g->dx * static_cast<double>(j);
        const std::ptrdiff_t m = (j < n_points / 2) ? static_cast<std::ptrdiff_t>(j)
                                                    : static_cast<std::ptrdiff_t>(j) -
                                                          static_cast<std::ptrdiff_t>(n_points);
        g->wavenumbers[j] = dxi * static_cast<double>(m);
    }
    return g;
}

RealField make_field(GridPtr grid) {
    RealField f;
    f.samples.assign(grid->n_points, 0.0);
    f.grid = std::move(grid);
    return f;
}

bool same_grid(const RealField& a, const RealField& b) {
    if (a.grid == b.grid) return true;
    if (!a.grid || !b.grid) return false;
    return a.grid->n_points == b.grid->n_points && a.grid->half_length == b.grid->half_length;
}

Spectrum forward(const RealField& f) {
    Spectrum spec(f.grid->half_size());
    fft::forward(f.samples, spec);
    return spec;
}

RealField inverse(const GridPtr& grid, const Spectrum& spec) {
    RealField f = make_field(grid);
    fft::inverse(spec, f.samples);
    return f;
}

Spectrum derivative_spectrum(const Grid& grid, const Spectrum& spec, int order) {
    if (order < 0) throw std::logic_error("derivative order must be >= 0");
    Spectrum out = spec;
    const std::size_t nh = grid.half_size();
    // (i xi)^order = i^order * xi^order; i^order cycles with period 4.
    const int phase = order % 4;
    for (std::size_t k = 0; k < nh; ++k) {
        const double xp = std::pow(grid.xi_half(k), order);
        std::complex<double> m;
        switch (phase) {
            case 0: m = {xp, 0}; break;
            case 1: m = {0, xp}; break;
            case 2: m = {-xp, 0}; break;
            default: m = {0, -xp}; break;
        }
        out[k] *= m;
    }
    if (order % 2 == 1) out[nh - 1] = 0.0;  // Nyquist has no usable odd derivative
    return out;
}

RealField spectral_derivative(const RealField& f, int order) {
    Spectrum spec = forward(f);
    spec = derivative_spectrum(*f.grid, spec, order);
    return inverse(f.grid, spec);
}

std::vector<double> dispersion_symbol(const Grid& grid, double beta, double c) {
    std::vector<double> s(grid.n_points);
    const double mass = 1.0 - c * c;
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double x2 = grid.wavenumbers[j] * grid.wavenumbers[j];
        s[j] = x2 * x2 - beta * x2 + mass;
    }
    return s;
}

std::vector<double> dispersion_symbol_half(const Grid& grid, double beta, double c) {
    std::vector<double> s(grid.half_size());
    const double mass = 1.0 - c * c;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double x2 = grid.xi_half(k) * grid.xi_half(k);
        s[k] = x2 * x2 - beta * x2 + mass;
    }
    return s;
}

double spectral_quadratic(const Grid& grid, const Spectrum& spec,
                          std::span<const double> half_weights) {
    const std::size_t nh = grid.half_size();
    double acc = 0;
    for (std::size_t k = 0; k < nh; ++k) {
        const double mag2 = std::norm(spec[k]);
        const double mult = (k == 0 || k == nh - 1) ? 1.0 : 2.0;
        acc += mult * half_weights[k] * mag2;
    }
    return grid.dx / static_cast<double>(grid.n_points) * acc;
}

Norms discrete_norms(const RealField& f) {
    Norms n;
    n.sup = kern::sup_abs(f.samples);
    n.l2 = std::sqrt(f.grid->dx * kern::dot(f.samples, f.samples));
    Spectrum spec = forward(f);
    std::vector<double> w(f.grid->half_size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double t = 1.0 + f.grid->xi_half(k) * f.grid->xi_half(k);
        w[k] = t * t;
    }
    n.h2 = std::sqrt(spectral_quadratic(*f.grid, spec, w));
    return n;
}

double x_norm(const StatePair& w) {
    return discrete_norms(w.u).h2 + discrete_norms(w.v).l2;
}

double integrate(const RealField& f) { return f.grid->dx * kern::sum(f.samples); }

double inner(const RealField& a, const RealField& b) {
    return a.grid->dx * kern::dot(a.samples, b.samples);
}

RealField translate(const RealField& f, double shift) {
    Spectrum spec = forward(f);
    const std::size_t nh = f.grid->half_size();
    for (std::size_t k = 0; k < nh; ++k) {
        const double a = f.grid->xi_half(k) * shift;
        spec[k] *= std::complex<double>(std::cos(a), std::sin(a));
    }
    // keep the result real: the Nyquist coefficient must stay real
    spec[nh - 1] = spec[nh - 1].real();
    return inverse(f.grid, spec);
}

void dealias_truncate(const Grid& grid, Spectrum& spec) {
    const std::size_t cut = grid.n_points / 3;
    for (std::size_t k = cut + 1; k < spec.size(); ++k) spec[k] = 0.0;
}

}  // namespace gsbq
