#include "gsbq/petviashvili.hpp"

#include <cmath>
#include <string>

#include "gsbq/errors.hpp"
#include "gsbq/fft.hpp"
#include "gsbq/kernels.hpp"

namespace gsbq {

RealField gaussian_init(const GridPtr& grid, double amplitude, double width) {
    RealField f = make_field(grid);
    for (std::size_t j = 0; j < grid->n_points; ++j) {
        const double x = grid->nodes[j];
        f.samples[j] = amplitude * std::exp(-x * x / (width * width));
    }
    return f;
}

namespace {

double functional_K_local(const RealField& u, double p, Parity parity) {
    std::vector<double> prim(u.samples.size());
    nonlinearity_apply(prim, u.samples, p, parity, NonlinPart::Primitive);
    return (p + 1.0) * u.grid->dx * kern::sum(prim);
}

SolveDiagnostics run_diagnostics(const WaveParams& wp, const RealField& phi, int iterations,
                                 double final_increment, double m_deviation,
                                 bool dealias_residual) {
    SolveDiagnostics d;
    d.iterations = iterations;
    d.final_increment = final_increment;
    d.m_deviation = m_deviation;

    const Grid& g = *phi.grid;
    const auto sym = dispersion_symbol_half(g, wp.beta, wp.c);
    Spectrum spec = forward(phi);

    // residual of the profile equation, evaluated spectrally; when the solve
    // truncated f(phi) by the 2/3 rule, the acceptance residual applies the
    // same truncation so it measures the equation the iteration discretizes
    std::vector<double> f(phi.samples.size());
    nonlinearity_apply(f, phi.samples, wp.p, wp.parity, NonlinPart::Value);
    Spectrum fhat(g.half_size());
    fft::forward(f, fhat);
    if (dealias_residual) dealias_truncate(g, fhat);
    Spectrum rhat(g.half_size());
    for (std::size_t k = 0; k < rhat.size(); ++k) rhat[k] = sym[k] * spec[k] - fhat[k];
    RealField res = inverse(phi.grid, rhat);
    d.residual_sup = kern::sup_abs(res.samples);

    const double I = spectral_quadratic(g, spec, sym);
    const double K = functional_K_local(phi, wp.p, wp.parity);
    d.ik_gap_rel = std::abs(I - K) / std::abs(K);

    // weights xi^2 and xi^4 for the gradient and curvature quadratures
    std::vector<double> w2(g.half_size()), w4(g.half_size());
    for (std::size_t k = 0; k < w2.size(); ++k) {
        const double x2 = g.xi_half(k) * g.xi_half(k);
        w2[k] = x2;
        w4[k] = x2 * x2;
    }
    const double grad2 = spectral_quadratic(g, spec, w2);
    const double curv2 = spectral_quadratic(g, spec, w4);
    const double mass2 = g.dx * kern::dot(phi.samples, phi.samples);
    std::vector<double> prim(phi.samples.size());
    nonlinearity_apply(prim, phi.samples, wp.p, wp.parity, NonlinPart::Primitive);
    const double F = g.dx * kern::sum(prim);
    d.pohozaev_rel = std::abs(3.0 * curv2 - wp.beta * grad2 - (1.0 - wp.c * wp.c) * mass2 +
                              2.0 * F) /
                     std::abs(K);

    const double sup = kern::sup_abs(phi.samples);
    d.boundary_tail =
        sup > 0 ? std::max(std::abs(phi.samples.front()), std::abs(phi.samples.back())) / sup : 0;
    return d;
}

}  // namespace

SolitaryWave petviashvili_solve(const WaveParams& params, const GridPtr& grid,
                                const RealField& init, const SolveOptions& opts) {
    if (!opts.skip_domain_check) validate(params);
    if (!(params.p > 1.0)) throw DomainError("nonlinearity exponent must satisfy p > 1");

    const Grid& g = *grid;
    const auto sym = dispersion_symbol_half(g, params.beta, params.c);
    const double exponent = params.p / (params.p - 1.0);

    RealField phi = init;
    phi.grid = grid;
    if (!(functional_K_local(phi, params.p, params.parity) > 0))
        throw DegenerateIterate("initial guess has K <= 0");

    std::vector<double> f(g.n_points);
    Spectrum fhat(g.half_size()), phihat(g.half_size());
    const std::size_t nh = g.half_size();

    bool converged = false;
    double last_inc = 0, m_dev = 0;
    int it = 0;
    for (it = 1; it <= opts.max_iterations; ++it) {
        nonlinearity_apply(f, phi.samples, params.p, params.parity, NonlinPart::Value);
        fft::forward(phi.samples, phihat);
        fft::forward(f, fhat);
        if (opts.dealias) dealias_truncate(g, fhat);

        // stabilizing ratio M = I(phi) / <f(phi), phi>; measure factors cancel
        double num = 0, den = 0;
        for (std::size_t k = 0; k < nh; ++k) {
            const double mult = (k == 0 || k == nh - 1) ? 1.0 : 2.0;
            num += mult * sym[k] * std::norm(phihat[k]);
            den += mult * (fhat[k].real() * phihat[k].real() + fhat[k].imag() * phihat[k].imag());
        }
        if (!(num > 0) || !(den > 0))
            throw DegenerateIterate("stabilizing ratio lost positivity at iteration " +
                                    std::to_string(it));
        const double M = num / den;
        const double factor = std::pow(M, exponent);

        for (std::size_t k = 0; k < nh; ++k) phihat[k] = factor * fhat[k] / sym[k];
        RealField next = inverse(grid, phihat);

        double inc = 0;
        for (std::size_t j = 0; j < g.n_points; ++j)
            inc = std::max(inc, std::abs(next.samples[j] - phi.samples[j]));
        const double sup = kern::sup_abs(next.samples);
        if (!(sup > 0)) throw DegenerateIterate("iterate collapsed to zero");
        last_inc = inc;
        m_dev = std::abs(M - 1.0);
        phi = std::move(next);
        if (inc < opts.increment_tol * sup && m_dev < opts.m_tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NonConvergence("no convergence in " + std::to_string(opts.max_iterations) +
                             " iterations (last increment " + std::to_string(last_inc) + ")");

    SolitaryWave wave{params, phi, run_diagnostics(params, phi, it, last_inc, m_dev, opts.dealias)};
    if (wave.diagnostics.boundary_tail > 1e-8)
        throw TailTruncation("profile does not decay on this grid: boundary tail " +
                             std::to_string(wave.diagnostics.boundary_tail));
    const double sup = kern::sup_abs(phi.samples);
    if (wave.diagnostics.ik_gap_rel > 1e-6 || wave.diagnostics.residual_sup > 1e-6 * sup)
        throw NonConvergence("iterate passed the increment test but fails residual acceptance");
    return wave;
}

SolitaryWave exact_profile(int p, double c, const GridPtr& grid) {
    if (p < 2) throw DomainError("closed-form profile needs integer p >= 2");
    if (!(c * c < 1.0)) throw DomainError("speed out of range: c^2 must be < 1");
    const double pd = p;
    const double s = 1.0 - c * c;
    const double beta = -((pd + 1.0) / 2.0 + 2.0 / (pd + 1.0)) * std::sqrt(s);
    const double amp = std::pow(s * (pd + 3.0) * (3.0 * pd + 1.0) / (8.0 * (pd + 1.0)),
                                1.0 / (pd - 1.0));
    const double rate = (pd - 1.0) * std::pow(s, 0.25) / (2.0 * std::sqrt(2.0 * (pd + 1.0)));
    const double power = 4.0 / (pd - 1.0);

    WaveParams wp{beta, c, pd, Parity::Odd};
    RealField phi = make_field(grid);
    for (std::size_t j = 0; j < grid->n_points; ++j)
        phi.samples[j] = amp * std::pow(1.0 / std::cosh(rate * grid->nodes[j]), power);

    SolitaryWave wave{wp, phi, {}};
    wave.diagnostics = run_diagnostics(wp, phi, 0, 0.0, 0.0, false);
    wave.diagnostics.m_deviation = wave.diagnostics.ik_gap_rel;
    if (wave.diagnostics.boundary_tail > 1e-12)
        throw TailTruncation("grid too narrow for the closed-form profile: boundary tail " +
                             std::to_string(wave.diagnostics.boundary_tail));
    return wave;
}

double solitary_residual(const SolitaryWave& wave) {
    return run_diagnostics(wave.params, wave.profile, wave.diagnostics.iterations,
                           wave.diagnostics.final_increment, wave.diagnostics.m_deviation, false)
        .residual_sup;
}

}  // namespace gsbq
