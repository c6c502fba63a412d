#include "gsbq/functionals.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gsbq/kernels.hpp"

namespace gsbq {

double functional_I(const RealField& u, double beta, double c) {
    const auto sym = dispersion_symbol_half(*u.grid, beta, c);
    Spectrum spec = forward(u);
    return spectral_quadratic(*u.grid, spec, sym);
}

double functional_K(const RealField& u, double p, Parity parity) {
    std::vector<double> prim(u.samples.size());
    nonlinearity_apply(prim, u.samples, p, parity, NonlinPart::Primitive);
    return (p + 1.0) * u.grid->dx * kern::sum(prim);
}

FunctionalReport conserved_quantities(const StatePair& w, const WaveParams& wp) {
    if (!same_grid(w.u, w.v)) throw std::logic_error("pair components live on different grids");
    FunctionalReport r;
    const Grid& g = *w.u.grid;

    // quadratic part of E through the spectrum: weight 1 - beta xi^2 + xi^4
    Spectrum uhat = forward(w.u);
    std::vector<double> wgt(g.half_size());
    for (std::size_t k = 0; k < wgt.size(); ++k) {
        const double x2 = g.xi_half(k) * g.xi_half(k);
        wgt[k] = 1.0 - wp.beta * x2 + x2 * x2;
    }
    const double quad_u = spectral_quadratic(g, uhat, wgt);
    const double quad_v = g.dx * kern::dot(w.v.samples, w.v.samples);
    std::vector<double> prim(w.u.samples.size());
    nonlinearity_apply(prim, w.u.samples, wp.p, wp.parity, NonlinPart::Primitive);
    r.E = 0.5 * (quad_u + quad_v) - g.dx * kern::sum(prim);

    r.Q = inner(w.u, w.v);
    r.Q1 = integrate(w.u);
    r.Q2 = integrate(w.v);
    r.Q3_k1 = inner(w.u, spectral_derivative(w.v, 2));
    return r;
}

ActionNehari action_and_nehari(const StatePair& w, const WaveParams& wp) {
    const double I = functional_I(w.u, wp.beta, wp.c);
    const double K = functional_K(w.u, wp.p, wp.parity);
    RealField shifted = w.v;
    kern::axpy(wp.c, w.u.samples, shifted.samples);  // c u + v
    const double cross = shifted.grid->dx * kern::dot(shifted.samples, shifted.samples);
    ActionNehari out;
    out.action_L = 0.5 * I - K / (wp.p + 1.0) + 0.5 * cross;
    out.nehari_P = I - K + cross;
    return out;
}

double pohozaev_residual(const SolitaryWave& wave) {
    const Grid& g = *wave.profile.grid;
    Spectrum spec = forward(wave.profile);
    std::vector<double> w2(g.half_size()), w4(g.half_size());
    for (std::size_t k = 0; k < w2.size(); ++k) {
        const double x2 = g.xi_half(k) * g.xi_half(k);
        w2[k] = x2;
        w4[k] = x2 * x2;
    }
    const double grad2 = spectral_quadratic(g, spec, w2);
    const double curv2 = spectral_quadratic(g, spec, w4);
    const double mass2 = g.dx * kern::dot(wave.profile.samples, wave.profile.samples);
    std::vector<double> prim(wave.profile.samples.size());
    nonlinearity_apply(prim, wave.profile.samples, wave.params.p, wave.params.parity,
                       NonlinPart::Primitive);
    const double F = g.dx * kern::sum(prim);
    const double K = functional_K(wave.profile, wave.params.p, wave.params.parity);
    const double c2 = wave.params.c * wave.params.c;
    return std::abs(3.0 * curv2 - wave.params.beta * grad2 - (1.0 - c2) * mass2 + 2.0 * F) /
           std::abs(K);
}

double h_quadratic_form(const StatePair& w1, const StatePair& w2, const SolitaryWave& wave) {
    const WaveParams& wp = wave.params;
    // integrate by parts once so only second derivatives appear
    RealField d1 = spectral_derivative(w1.u, 1), d2 = spectral_derivative(w2.u, 1);
    RealField dd1 = spectral_derivative(w1.u, 2), dd2 = spectral_derivative(w2.u, 2);
    std::vector<double> slope(wave.profile.samples.size());
    nonlinearity_apply(slope, wave.profile.samples, wp.p, wp.parity, NonlinPart::Slope);

    const Grid& g = *wave.profile.grid;
    const double c2 = 1.0 - wp.c * wp.c;
    double acc = 0;
    for (std::size_t j = 0; j < g.n_points; ++j) {
        const double cu1 = wp.c * w1.u.samples[j] + w1.v.samples[j];
        const double cu2 = wp.c * w2.u.samples[j] + w2.v.samples[j];
        acc += dd1.samples[j] * dd2.samples[j] - wp.beta * d1.samples[j] * d2.samples[j] +
               (c2 - slope[j]) * w1.u.samples[j] * w2.u.samples[j] + cu1 * cu2;
    }
    return g.dx * acc;
}

InstabilityDirections instability_direction_forms(const SolitaryWave& wave) {
    const WaveParams& wp = wave.params;
    const RealField& phi = wave.profile;
    const Grid& g = *phi.grid;

    InstabilityDirections out;

    // direction (i): (phi, c phi)
    StatePair di;
    di.u = phi;
    di.v = phi;
    kern::scale(di.v.samples, wp.c);
    out.dir_i_value = h_quadratic_form(di, di, wave);

    // pairing with the momentum gradient (-c phi, phi) at the wave pair
    double acc = 0;
    for (std::size_t j = 0; j < g.n_points; ++j)
        acc += -wp.c * phi.samples[j] * di.u.samples[j] + phi.samples[j] * di.v.samples[j];
    out.q_orth_i = g.dx * acc;

    // direction (ii): generator of the scaling path, x measured from the
    // profile's centroid
    const double mass = kern::dot(phi.samples, phi.samples);
    double first = 0;
    for (std::size_t j = 0; j < g.n_points; ++j)
        first += g.nodes[j] * phi.samples[j] * phi.samples[j];
    const double centroid = mass > 0 ? first / mass : 0.0;

    RealField dphi = spectral_derivative(phi, 1);
    StatePair dii;
    dii.u = make_field(phi.grid);
    dii.v = make_field(phi.grid);
    for (std::size_t j = 0; j < g.n_points; ++j) {
        const double y = g.nodes[j] - centroid;
        dii.u.samples[j] = phi.samples[j] + 2.0 * y * dphi.samples[j];
        dii.v.samples[j] = -wp.c * dii.u.samples[j];
    }
    out.dir_ii_value = h_quadratic_form(dii, dii, wave);

    acc = 0;
    for (std::size_t j = 0; j < g.n_points; ++j)
        acc += -wp.c * phi.samples[j] * dii.u.samples[j] + phi.samples[j] * dii.v.samples[j];
    out.q_orth_ii = g.dx * acc;

    return out;
}

FunctionalReport functional_report(const SolitaryWave& wave) {
    const WaveParams& wp = wave.params;
    StatePair pair;
    pair.u = wave.profile;
    pair.v = wave.profile;
    kern::scale(pair.v.samples, -wp.c);

    FunctionalReport r = conserved_quantities(pair, wp);
    r.I = functional_I(wave.profile, wp.beta, wp.c);
    r.K = functional_K(wave.profile, wp.p, wp.parity);
    const ActionNehari an = action_and_nehari(pair, wp);
    r.action_L = an.action_L;
    r.nehari_P = an.nehari_P;
    r.m_ratio = r.I / std::pow(r.K, 2.0 / (wp.p + 1.0));
    r.d_value = (wp.p - 1.0) / (2.0 * (wp.p + 1.0)) * r.K;
    return r;
}

}  // namespace gsbq
