#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace gsbq {

/// Uniform periodic grid on [-L, L) with transform wavenumbers
/// xi_j = (pi/L) * m_j, m_j in {0, 1, ..., n/2-1, -n/2, ..., -1}.
/// n must be a power of two >= 16.
struct Grid {
    double half_length = 0;
    std::size_t n_points = 0;
    double dx = 0;
    std::vector<double> nodes;
    std::vector<double> wavenumbers;

    // Wavenumber of halfcomplex mode k, k in [0, n/2].
    double xi_half(std::size_t k) const;
    std::size_t half_size() const { return n_points / 2 + 1; }
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double half_length, std::size_t n_points);

struct RealField {
    GridPtr grid;
    std::vector<double> samples;
};

RealField make_field(GridPtr grid);
bool same_grid(const RealField& a, const RealField& b);

/// (u, v) pair advanced by the first-order evolution system.
struct StatePair {
    RealField u;
    RealField v;
};

using Spectrum = std::vector<std::complex<double>>;

Spectrum forward(const RealField& f);
RealField inverse(const GridPtr& grid, const Spectrum& spec);

/// Differentiate by multiplying with (i xi)^order; the Nyquist mode is zeroed
/// for odd orders.
RealField spectral_derivative(const RealField& f, int order);
Spectrum derivative_spectrum(const Grid& grid, const Spectrum& spec, int order);

/// xi^4 - beta xi^2 + (1 - c^2), one entry per wavenumber.
std::vector<double> dispersion_symbol(const Grid& grid, double beta, double c);
std::vector<double> dispersion_symbol_half(const Grid& grid, double beta, double c);

struct Norms {
    double l2 = 0;
    double h2 = 0;
    double sup = 0;
};

/// l2 = sqrt(dx * sum u^2); h2 from the spectrum with weight (1 + xi^2)^2,
/// normalized to agree with l2 on constants; sup norm.
Norms discrete_norms(const RealField& f);

/// H^2 x L^2 size of a pair: h2(u) + l2(v).
double x_norm(const StatePair& w);

double integrate(const RealField& f);                     // dx * sum
double inner(const RealField& a, const RealField& b);     // dx * sum of products

/// (dx/n) * sum over the full spectrum of g(|xi_k|) |uhat_k|^2 with g sampled
/// on the halfcomplex modes. Equals the physical quadrature of the associated
/// quadratic form by the discrete Parseval identity.
double spectral_quadratic(const Grid& grid, const Spectrum& spec,
                          std::span<const double> half_weights);

RealField translate(const RealField& f, double shift);    // u(. + shift)

/// 2/3-rule truncation: zero modes with index above n/3.
void dealias_truncate(const Grid& grid, Spectrum& spec);

}  // namespace gsbq
