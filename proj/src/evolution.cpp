#include "gsbq/evolution.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "gsbq/errors.hpp"
#include "gsbq/fft.hpp"
#include "gsbq/functionals.hpp"
#include "gsbq/kernels.hpp"

namespace gsbq {

namespace {

struct RotTables {
    std::vector<double> ct, sd, sm;
};

RotTables make_tables(const Grid& g, double beta, double t) {
    const std::size_t half = g.half_size();
    RotTables tab;
    tab.ct.resize(half);
    tab.sd.resize(half);
    tab.sm.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
        const double xi = g.xi_half(k);
        const double w = std::sqrt(1.0 - beta * xi * xi + xi * xi * xi * xi);
        const double theta = t * xi * w;
        tab.ct[k] = std::cos(theta);
        const double s = std::sin(theta);
        tab.sd[k] = s / w;
        tab.sm[k] = s * w;
    }
    return tab;
}

struct SpecPair {
    Spectrum u, v;
};

SpecPair rotated(SpecPair w, const RotTables& tab) {
    kern::rotate_pair(w.u, w.v, tab.ct, tab.sd, tab.sm);
    w.u.back().imag(0);
    w.v.back().imag(0);
    return w;
}

void caxpy(double a, const Spectrum& x, Spectrum& y) {
    kern::axpy(a, {reinterpret_cast<const double*>(x.data()), 2 * x.size()},
               {reinterpret_cast<double*>(y.data()), 2 * y.size()});
}

// g(w) = (0, -d/dx f(u)); only the v component is nonzero.
Spectrum nonlinear_rhs(const GridPtr& grid, const WaveParams& wp, bool dealias,
                       const Spectrum& su, RealField& fbuf) {
    RealField u = inverse(grid, su);
    nonlinearity_apply(fbuf.samples, u.samples, wp.p, wp.parity, NonlinPart::Value);
    Spectrum fs = forward(fbuf);
    if (dealias) dealias_truncate(*grid, fs);
    Spectrum ds = derivative_spectrum(*grid, fs, 1);
    kern::scale(std::span<std::complex<double>>(ds), -1.0);
    return ds;
}

void lawson_step(const GridPtr& grid, const WaveParams& wp, bool dealias, const RotTables& full,
                 const RotTables& half_tab, double h, SpecPair& w, RealField& fbuf) {
    const std::size_t m = w.u.size();
    Spectrum k1 = nonlinear_rhs(grid, wp, dealias, w.u, fbuf);

    SpecPair a2 = w;
    caxpy(0.5 * h, k1, a2.v);
    a2 = rotated(std::move(a2), half_tab);
    Spectrum k2 = nonlinear_rhs(grid, wp, dealias, a2.u, fbuf);

    SpecPair a3 = rotated(w, half_tab);
    caxpy(0.5 * h, k2, a3.v);
    Spectrum k3 = nonlinear_rhs(grid, wp, dealias, a3.u, fbuf);

    SpecPair a4 = rotated(w, full);
    SpecPair k3p = rotated(SpecPair{Spectrum(m), k3}, half_tab);
    caxpy(h, k3p.u, a4.u);
    caxpy(h, k3p.v, a4.v);
    Spectrum k4 = nonlinear_rhs(grid, wp, dealias, a4.u, fbuf);

    SpecPair k1p = rotated(SpecPair{Spectrum(m), std::move(k1)}, full);
    Spectrum k23 = std::move(k2);
    caxpy(1.0, k3, k23);
    SpecPair k23p = rotated(SpecPair{Spectrum(m), std::move(k23)}, half_tab);

    SpecPair next = rotated(std::move(w), full);
    caxpy(h / 6.0, k1p.u, next.u);
    caxpy(h / 6.0, k1p.v, next.v);
    caxpy(h / 3.0, k23p.u, next.u);
    caxpy(h / 3.0, k23p.v, next.v);
    caxpy(h / 6.0, k4, next.v);
    w = std::move(next);
}

double drift(double value, double base) {
    return std::abs(value - base) / std::max(std::abs(base), 1.0);
}

}  // namespace

void linear_propagate(double beta, double t, StatePair& state) {
    if (!(beta < 2.0))
        throw DomainError("linear flow needs beta < 2 so 1 - beta xi^2 + xi^4 stays positive");
    if (!same_grid(state.u, state.v)) throw DomainError("state components live on different grids");
    const Grid& g = *state.u.grid;
    RotTables tab = make_tables(g, beta, t);
    SpecPair w{forward(state.u), forward(state.v)};
    w = rotated(std::move(w), tab);
    state.u = inverse(state.u.grid, w.u);
    state.v = inverse(state.v.grid, w.v);
}

EvolveResult evolve(const WaveParams& params, const StatePair& initial, const EvolveOptions& opt) {
    if (!(params.beta < 2.0))
        throw DomainError("linear flow needs beta < 2 so 1 - beta xi^2 + xi^4 stays positive");
    if (!(params.p > 1.0)) throw DomainError("nonlinearity exponent must satisfy p > 1");
    if (!(opt.dt > 0) || !(opt.t_final >= 0) || opt.record_every < 1)
        throw DomainError("evolution needs dt > 0, t_final >= 0, record_every >= 1");
    if (!same_grid(initial.u, initial.v))
        throw DomainError("state components live on different grids");

    const GridPtr grid = initial.u.grid;
    const Grid& g = *grid;
    const std::size_t half = g.half_size();

    std::vector<double> w_h2(half), w_one(half, 1.0);
    for (std::size_t k = 0; k < half; ++k) {
        const double s = 1.0 + g.xi_half(k) * g.xi_half(k);
        w_h2[k] = s * s;
    }

    const FunctionalReport base = conserved_quantities(initial, params);

    EvolveResult res;
    res.state = initial;
    auto record = [&](double t, SpecPair& w) {
        StatePair s{inverse(grid, w.u), inverse(grid, w.v)};
        FunctionalReport r = conserved_quantities(s, params);
        MonitorRow row;
        row.t = t;
        row.e_drift = drift(r.E, base.E);
        row.q_drift = drift(r.Q, base.Q);
        row.q1_drift = drift(r.Q1, base.Q1);
        row.q2_drift = drift(r.Q2, base.Q2);
        row.q3_drift = drift(r.Q3_k1, base.Q3_k1);
        row.x_size = x_norm(s);
        res.monitor.push_back(row);
        if (opt.keep_snapshots) res.snapshots.push_back(s);
        res.state = std::move(s);
    };

    SpecPair w{forward(initial.u), forward(initial.v)};
    record(0.0, w);
    res.t_reached = 0.0;

    const double x0 = res.monitor.front().x_size;
    if (!std::isfinite(x0)) throw NonFinite("initial state norm is not finite");

    const double h = opt.dt;
    long long steps = static_cast<long long>(std::ceil(opt.t_final / h - 1e-9));
    if (steps < 0) steps = 0;
    if (steps == 0) return res;
    double h_last = opt.t_final - static_cast<double>(steps - 1) * h;
    if (std::abs(h_last - h) < 1e-12 * h) h_last = h;

    const RotTables full = make_tables(g, params.beta, h);
    const RotTables half_tab = make_tables(g, params.beta, 0.5 * h);

    RealField fbuf = make_field(grid);
    for (long long i = 0; i < steps; ++i) {
        const bool last = (i + 1 == steps);
        const double hi = last ? h_last : h;
        if (hi == h) {
            lawson_step(grid, params, opt.dealias, full, half_tab, h, w, fbuf);
        } else {
            const RotTables f2 = make_tables(g, params.beta, hi);
            const RotTables h2tab = make_tables(g, params.beta, 0.5 * hi);
            lawson_step(grid, params, opt.dealias, f2, h2tab, hi, w, fbuf);
        }
        const double t = last ? opt.t_final : static_cast<double>(i + 1) * h;

        const double hu = std::sqrt(spectral_quadratic(g, w.u, w_h2));
        const double lv = std::sqrt(spectral_quadratic(g, w.v, w_one));
        const double xs = hu + lv;
        if (!std::isfinite(xs))
            throw NonFinite("state norm became non-finite at t = " + std::to_string(t));
        if (xs > opt.blowup_factor * std::max(x0, 1e-300)) {
            res.state = StatePair{inverse(grid, w.u), inverse(grid, w.v)};
            res.t_reached = t;
            res.blew_up = true;
            return res;
        }
        if (!last && (i + 1) % opt.record_every == 0) record(t, w);
        res.t_reached = t;
    }
    record(opt.t_final, w);
    return res;
}

OrbitalFit orbital_distance(const StatePair& state, const RealField& profile, double c) {
    if (!same_grid(state.u, profile)) throw DomainError("profile grid differs from the state grid");
    const Grid& g = *profile.grid;
    const std::size_t n = g.n_points;

    // coarse pass: circular cross-correlation of u - c v against the profile
    std::vector<std::complex<double>> wz(n), pz(n), cf(n);
    for (std::size_t j = 0; j < n; ++j) {
        wz[j] = state.u.samples[j] - c * state.v.samples[j];
        pz[j] = profile.samples[j];
    }
    std::vector<std::complex<double>> wf(n), pf(n);
    fft::complex_forward(wz, wf);
    fft::complex_forward(pz, pf);
    for (std::size_t k = 0; k < n; ++k) cf[k] = std::conj(wf[k] * std::conj(pf[k]));
    std::vector<std::complex<double>> corr(n);
    fft::complex_forward(cf, corr);

    std::size_t best = 0;
    double best_corr = corr[0].real();
    for (std::size_t m = 1; m < n; ++m) {
        if (corr[m].real() > best_corr) {
            best_corr = corr[m].real();
            best = m;
        }
    }
    double r0 = static_cast<double>(best) * g.dx;
    if (r0 > g.half_length) r0 -= 2.0 * g.half_length;  // wrap to [-L, L)

    auto objective = [&](double r) {
        RealField shifted = translate(profile, -r);  // phi(x - r)
        RealField du = shifted;
        for (std::size_t j = 0; j < n; ++j) du.samples[j] = state.u.samples[j] - shifted.samples[j];
        RealField dv = shifted;
        for (std::size_t j = 0; j < n; ++j)
            dv.samples[j] = state.v.samples[j] + c * shifted.samples[j];
        return discrete_norms(du).h2 + discrete_norms(dv).l2;
    };

    // golden-section refinement inside one grid cell on each side
    double a = r0 - g.dx, b = r0 + g.dx;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-10 * g.dx) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = objective(x2);
        }
    }
    const double r = 0.5 * (a + b);
    return OrbitalFit{objective(r), r};
}

StatePair make_perturbation(const RealField& profile, double c, PerturbKind kind, double delta,
                            std::uint64_t seed) {
    const GridPtr grid = profile.grid;
    const Grid& g = *grid;
    StatePair pair;
    pair.u = profile;
    pair.v = profile;
    kern::scale(std::span<double>(pair.v.samples), -c);

    switch (kind) {
        case PerturbKind::Scale: {
            kern::scale(std::span<double>(pair.u.samples), 1.0 + delta);
            kern::scale(std::span<double>(pair.v.samples), 1.0 + delta);
            return pair;
        }
        case PerturbKind::DirectionI: {
            // pair + delta (phi, c phi)
            kern::axpy(delta, profile.samples, pair.u.samples);
            RealField cphi = profile;
            kern::scale(std::span<double>(cphi.samples), c);
            kern::axpy(delta, cphi.samples, pair.v.samples);
            return pair;
        }
        case PerturbKind::BandlimitedNoise: {
            std::mt19937_64 rng(seed);
            auto unit = [&rng]() {
                // top 53 bits mapped to [0,1), then shifted to [-1,1)
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                return 2.0 * u - 1.0;
            };
            const std::size_t half = g.half_size();
            Spectrum nu(half), nv(half);
            for (std::size_t k = 1; k < half; ++k) {
                const double xi = g.xi_half(k);
                if (xi <= 0 || xi > 2.0) continue;
                nu[k] = {unit(), unit()};
                nv[k] = {unit(), unit()};
            }
            nu.back().imag(0);
            nv.back().imag(0);
            StatePair noise{inverse(grid, nu), inverse(grid, nv)};
            const double size = x_norm(noise);
            if (size > 0) {
                const double target = delta * x_norm(pair);
                kern::scale(std::span<double>(noise.u.samples), target / size);
                kern::scale(std::span<double>(noise.v.samples), target / size);
            }
            kern::axpy(1.0, noise.u.samples, pair.u.samples);
            kern::axpy(1.0, noise.v.samples, pair.v.samples);
            return pair;
        }
    }
    return pair;
}

}  // namespace gsbq
