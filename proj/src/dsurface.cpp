#include "gsbq/dsurface.hpp"

#include <cmath>
#include <limits>

#include "gsbq/errors.hpp"
#include "gsbq/functionals.hpp"
#include "gsbq/kernels.hpp"
#include "gsbq/parallel.hpp"
#include "gsbq/textio.hpp"

namespace gsbq {

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Stable: return "Stable";
        case Classification::Unstable: return "Unstable";
        case Classification::NoSolitaryWave: return "NoSolitaryWave";
        case Classification::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

std::string to_string(Provenance p) {
    return p == Provenance::DirectSolve ? "DirectSolve" : "ScalingTransport";
}

namespace {

double scaling_exponent(double p) { return (3.0 * p + 5.0) / (2.0 * (p - 1.0)); }

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

DPoint d_point(double beta, double c, double p, Parity parity, const SurfaceOptions& opt) {
    WaveParams wp{beta, c, p, parity};
    validate(wp);
    GridPtr grid = make_grid(opt.half_length, opt.n_points);
    RealField init = gaussian_init(grid, opt.init_amplitude, opt.init_width);
    SolitaryWave wave = petviashvili_solve(wp, grid, init, opt.solve);

    const Grid& g = *grid;
    const double K = functional_K(wave.profile, p, parity);
    Spectrum spec = forward(wave.profile);
    std::vector<double> w2(g.half_size());
    for (std::size_t k = 0; k < w2.size(); ++k) w2[k] = g.xi_half(k) * g.xi_half(k);
    const double grad2 = spectral_quadratic(g, spec, w2);
    const double mass = g.dx * kern::dot(wave.profile.samples, wave.profile.samples);

    DPoint pt;
    pt.beta = beta;
    pt.c = c;
    pt.d = (p - 1.0) / (2.0 * (p + 1.0)) * K;
    pt.mass = mass;
    pt.d_c = -c * mass;
    pt.d_beta = -0.5 * grad2;
    pt.provenance = Provenance::DirectSolve;
    pt.classification = classify_point(beta, c, p, parity, {}, pt.d);
    return pt;
}

double default_c_step(double beta, double c) {
    return std::min(1e-2, 0.05 * (c_star(beta) - c));
}

double default_beta_step(double beta, double c) {
    return std::min(1e-2, 0.05 * (beta_star(c) - beta));
}

double d_cc(double beta, double c, double p, Parity parity, double step,
            const SurfaceOptions& opt) {
    if (!(step > 0)) throw StepTooLarge("difference step must be positive");
    if (c + step >= c_star(beta))
        throw StepTooLarge("difference step crosses the existence boundary: c + h = " +
                           std::to_string(c + step));
    if (!params_valid({beta, c - step, p, parity}))
        throw StepTooLarge("difference stencil leaves the parameter region");
    const DPoint hi = d_point(beta, c + step, p, parity, opt);
    const DPoint lo = d_point(beta, c - step, p, parity, opt);
    return (hi.d_c - lo.d_c) / (2.0 * step);
}

DPoint scaling_transport(const DPoint& point, double r, double p, Parity parity) {
    const double s2 = 1.0 - point.c * point.c;
    const double rmax = 1.0 / std::sqrt(s2);
    if (!(r > 0) || r > rmax * (1.0 + 1e-12))
        throw ScaleOutOfRange("scale must satisfy 0 < r <= (1-c^2)^(-1/2) = " +
                              std::to_string(rmax) + ", got " + std::to_string(r));
    const double q = scaling_exponent(p);
    DPoint out;
    out.beta = r * point.beta;
    out.c = std::sqrt(std::max(0.0, 1.0 - r * r * s2));
    out.d = std::pow(r, q) * point.d;
    out.mass = std::pow(r, q - 2.0) * point.mass;
    out.d_c = -out.c * out.mass;
    out.d_beta = std::pow(r, q - 1.0) * point.d_beta;
    out.provenance = Provenance::ScalingTransport;
    out.classification = classify_point(out.beta, out.c, p, parity, {}, out.d);
    return out;
}

std::optional<double> sign_change_location(double beta0, double p, double d, double d_beta,
                                           double d_betabeta) {
    const double g = (3.0 * p + 5.0) / (4.0 * (p - 1.0));
    const double num = -beta0 * d_beta + 2.0 * g * d;
    const double den = 2.0 * g * (2.0 * g - 1.0) * d - 2.0 * (2.0 * g - 1.0) * beta0 * d_beta +
                       beta0 * beta0 * d_betabeta;
    if (den == 0.0) return std::nullopt;
    const double P = num / den;
    if (P > 0.0 && P < 1.0) return std::sqrt(P);
    return std::nullopt;
}

std::optional<double> sign_change_from_point(double c0, double d_c, double d_cc) {
    const double den = (c0 * c0 - 1.0) * c0 * d_cc + d_c;
    if (den == 0.0) return std::nullopt;
    const double P = c0 * c0 * d_c / den;
    if (P > 0.0 && P < 1.0) return std::sqrt(P);
    return std::nullopt;
}

Classification classify_point(double beta, double c, double p, Parity parity,
                              std::optional<double> dcc, std::optional<double> d) {
    const double c2 = c * c;
    if (c2 >= 1.0) {
        const double arg = (3.0 * p + 5.0) * (p - 1.0) * (c2 - 1.0);
        const double threshold = 2.0 * std::sqrt(arg) / (p + 3.0);
        if (beta < threshold) return Classification::NoSolitaryWave;
        if (parity == Parity::Odd && beta >= 0) return Classification::NoSolitaryWave;
        return Classification::Indeterminate;
    }
    if (!(beta < beta_star(c))) return Classification::Indeterminate;

    const double cs = c_star(beta);
    if (c2 < (p - 1.0) / (p + 3.0) * cs * cs) return Classification::Unstable;
    if (p >= 9.0) {
        const double frac = (p - 1.0) * (p - 9.0) / ((p - 1.0) * (p - 1.0) + 16.0);
        if (beta < frac * beta_star(c)) return Classification::Unstable;
    }
    if (dcc) {
        const double gap = cs - std::abs(c);
        const double tol = (d && gap > 0) ? 1e-4 * (*d) / (gap * gap) : 0.0;
        if (*dcc < -tol) return Classification::Unstable;
        if (*dcc > tol) return Classification::Stable;
    }
    return Classification::Indeterminate;
}

namespace {

SweepRow nan_row(double beta, double c, const std::string& err) {
    SweepRow row;
    row.point.beta = beta;
    row.point.c = c;
    row.point.d = row.point.d_c = row.point.d_beta = row.point.mass = kNaN;
    row.error = err;
    return row;
}

SweepRow sweep_point(double beta, double c, const SweepSpec& spec) {
    try {
        SweepRow row;
        row.point = d_point(beta, c, spec.p, spec.parity, spec.opt);
        if (spec.with_dcc) {
            try {
                const double h = default_c_step(beta, c);
                row.point.d_cc = d_cc(beta, c, spec.p, spec.parity, h, spec.opt);
                row.point.classification =
                    classify_point(beta, c, spec.p, spec.parity, row.point.d_cc, row.point.d);
            } catch (const Error& e) {
                row.error = std::string("d_cc: ") + e.what();
            }
        }
        return row;
    } catch (const Error& e) {
        return nan_row(beta, c, e.what());
    } catch (const std::exception& e) {
        return nan_row(beta, c, e.what());
    }
}

}  // namespace

std::vector<SweepRow> sweep_segment(const SweepSpec& spec) {
    if (spec.samples < 1) throw DomainError("sweep needs at least one sample");
    const int n = spec.samples;
    std::vector<double> betas(n), cs(n);
    for (int i = 0; i < n; ++i) {
        switch (spec.segment) {
            case Segment::S1:
                betas[i] = -1.0 + 3.0 * i / n;
                cs[i] = 0.0;
                break;
            case Segment::S2:
                betas[i] = -1.0;
                cs[i] = static_cast<double>(i) / n;
                break;
            case Segment::CustomEllipse:
                cs[i] = static_cast<double>(i) / n;
                betas[i] = spec.ellipse_k * std::sqrt(1.0 - cs[i] * cs[i]);
                break;
        }
    }
    std::vector<SweepRow> rows(n);
    const int nw = par::workers();
#pragma omp parallel for schedule(dynamic) num_threads(nw) if (nw > 1)
    for (int i = 0; i < n; ++i) rows[i] = sweep_point(betas[i], cs[i], spec);
    return rows;
}

namespace {

struct AnchorBundle {
    std::vector<SweepRow> rows;
    std::vector<std::pair<double, double>> crossings;
};

// Transported curvature along the ellipse through a c = 0 anchor:
// s^(2g-4) [2g d (c^2(2g-1) - 1) + b0 d_b (1 - (4g-2) c^2) + c^2 b0^2 d_bb].
double transported_dcc_from_s1(double beta0, double p, double d, double d_beta, double d_betabeta,
                               double c) {
    const double g = (3.0 * p + 5.0) / (4.0 * (p - 1.0));
    const double c2 = c * c;
    const double bracket = 2.0 * g * d * (c2 * (2.0 * g - 1.0) - 1.0) +
                           beta0 * d_beta * (1.0 - (4.0 * g - 2.0) * c2) +
                           c2 * beta0 * beta0 * d_betabeta;
    return std::pow(1.0 - c2, g - 2.0) * bracket;
}

// Same along the ellipse through an interior anchor (beta0, c0), c0 > 0:
// r^(q-4) [(1-c0^2) c0 c^2 dcc0 + (c0^2 - c^2) dc0] / (c0^3 (1-c0^2)).
double transported_dcc_from_interior(double c0, double q, double dc0, double dcc0, double r,
                                     double c) {
    const double c2 = c * c, c02 = c0 * c0;
    const double bracket = (1.0 - c02) * c0 * c2 * dcc0 + (c02 - c2) * dc0;
    return std::pow(r, q - 4.0) * bracket / (c02 * c0 * (1.0 - c02));
}

AnchorBundle atlas_s1_anchor(double beta0, double p, Parity parity, int resolution,
                             const SurfaceOptions& opt) {
    AnchorBundle out;
    try {
        DPoint base = d_point(beta0, 0.0, p, parity, opt);
        const double hc = default_c_step(beta0, 0.0);
        const double dcc0 = d_cc(beta0, 0.0, p, parity, hc, opt);
        const double hb = default_beta_step(beta0, 0.0);
        const DPoint bp = d_point(beta0 + hb, 0.0, p, parity, opt);
        const DPoint bm = d_point(beta0 - hb, 0.0, p, parity, opt);
        const double dbb0 = (bp.d_beta - bm.d_beta) / (2.0 * hb);

        base.d_cc = dcc0;
        base.classification = classify_point(beta0, 0.0, p, parity, dcc0, base.d);
        out.rows.push_back({base, ""});

        if (auto cx = sign_change_location(beta0, p, base.d, base.d_beta, dbb0))
            out.crossings.emplace_back(beta0 * std::sqrt(1.0 - *cx * *cx), *cx);

        for (int j = 1; j < resolution; ++j) {
            const double c = 0.96 * j / (resolution - 1);
            DPoint t = scaling_transport(base, std::sqrt(1.0 - c * c), p, parity);
            t.d_cc = transported_dcc_from_s1(beta0, p, base.d, base.d_beta, dbb0, c);
            t.classification = classify_point(t.beta, t.c, p, parity, t.d_cc, t.d);
            out.rows.push_back({t, ""});
        }
    } catch (const std::exception& e) {
        out.rows.push_back(nan_row(beta0, 0.0, e.what()));
    }
    return out;
}

AnchorBundle atlas_s2_anchor(double c0, double p, Parity parity, int resolution,
                             const SurfaceOptions& opt) {
    AnchorBundle out;
    const double beta0 = -1.0;
    try {
        DPoint base = d_point(beta0, c0, p, parity, opt);
        const double hc = default_c_step(beta0, c0);
        const double dcc0 = d_cc(beta0, c0, p, parity, hc, opt);
        base.d_cc = dcc0;
        base.classification = classify_point(beta0, c0, p, parity, dcc0, base.d);
        out.rows.push_back({base, ""});

        const double k = -1.0 / std::sqrt(1.0 - c0 * c0);
        if (auto cx = sign_change_from_point(c0, base.d_c, dcc0))
            out.crossings.emplace_back(k * std::sqrt(1.0 - *cx * *cx), *cx);

        const double q = scaling_exponent(p);
        for (int j = 0; j < resolution; ++j) {
            const double c = 0.96 * j / (resolution - 1);
            if (std::abs(c - c0) < 1e-9) continue;
            const double r = std::sqrt((1.0 - c * c) / (1.0 - c0 * c0));
            DPoint t = scaling_transport(base, r, p, parity);
            t.d_cc = transported_dcc_from_interior(c0, q, base.d_c, dcc0, r, c);
            t.classification = classify_point(t.beta, t.c, p, parity, t.d_cc, t.d);
            out.rows.push_back({t, ""});
        }
    } catch (const std::exception& e) {
        out.rows.push_back(nan_row(beta0, c0, e.what()));
    }
    return out;
}

}  // namespace

NodalAtlas nodal_atlas(double p, Parity parity, int resolution, const SurfaceOptions& opt) {
    if (resolution < 8) throw DomainError("atlas resolution must be >= 8 points per segment");
    const int total = resolution + (resolution - 1);
    std::vector<AnchorBundle> bundles(total);
    const int nw = par::workers();
#pragma omp parallel for schedule(dynamic) num_threads(nw) if (nw > 1)
    for (int a = 0; a < total; ++a) {
        if (a < resolution) {
            const double beta0 = -1.0 + 3.0 * a / resolution;
            bundles[a] = atlas_s1_anchor(beta0, p, parity, resolution, opt);
        } else {
            const double c0 = static_cast<double>(a - resolution + 1) / resolution;
            bundles[a] = atlas_s2_anchor(c0, p, parity, resolution, opt);
        }
    }
    NodalAtlas atlas;
    for (auto& b : bundles) {
        atlas.samples.insert(atlas.samples.end(), b.rows.begin(), b.rows.end());
        atlas.crossings.insert(atlas.crossings.end(), b.crossings.begin(), b.crossings.end());
    }
    return atlas;
}

DPoint d_point_auto(double beta, double c, double p, Parity parity, const SurfaceOptions& opt) {
    validate({beta, c, p, parity});
    const double cs = c_star(beta);
    if (c <= 0.9 * cs) {
        DPoint pt = d_point(beta, c, p, parity, opt);
        try {
            pt.d_cc = d_cc(beta, c, p, parity, default_c_step(beta, c), opt);
            pt.classification = classify_point(beta, c, p, parity, pt.d_cc, pt.d);
        } catch (const Error&) {
            // curvature unavailable; keep the analytic classification
        }
        return pt;
    }
    const double k = beta / std::sqrt(1.0 - c * c);
    if (k >= -1.0) {
        DPoint base = d_point(k, 0.0, p, parity, opt);
        const double hc = default_c_step(k, 0.0);
        const double dcc0 = d_cc(k, 0.0, p, parity, hc, opt);
        const double hb = default_beta_step(k, 0.0);
        const DPoint bp = d_point(k + hb, 0.0, p, parity, opt);
        const DPoint bm = d_point(k - hb, 0.0, p, parity, opt);
        const double dbb0 = (bp.d_beta - bm.d_beta) / (2.0 * hb);
        base.d_cc = dcc0;
        DPoint t = scaling_transport(base, std::sqrt(1.0 - c * c), p, parity);
        t.d_cc = transported_dcc_from_s1(k, p, base.d, base.d_beta, dbb0, c);
        t.classification = classify_point(t.beta, t.c, p, parity, t.d_cc, t.d);
        return t;
    }
    const double c0 = std::sqrt(1.0 - 1.0 / (k * k));
    DPoint base = d_point(-1.0, c0, p, parity, opt);
    const double hc = default_c_step(-1.0, c0);
    const double dcc0 = d_cc(-1.0, c0, p, parity, hc, opt);
    const double r = -beta;
    DPoint t = scaling_transport(base, r, p, parity);
    t.d_cc = transported_dcc_from_interior(c0, scaling_exponent(p), base.d_c, dcc0, r, c);
    t.classification = classify_point(t.beta, t.c, p, parity, t.d_cc, t.d);
    return t;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "beta,c,d,d_c,d_beta,d_cc,classification,provenance\n";
    for (const auto& row : rows) {
        const DPoint& pt = row.point;
        out += num17(pt.beta) + ',' + num17(pt.c) + ',' + num17(pt.d) + ',' + num17(pt.d_c) +
               ',' + num17(pt.d_beta) + ',' + num17(pt.d_cc ? *pt.d_cc : kNaN) + ',' +
               to_string(pt.classification) + ',' + to_string(pt.provenance) + '\n';
    }
    return out;
}

std::string crossings_csv(const std::vector<std::pair<double, double>>& crossings) {
    std::string out = "beta,c\n";
    for (const auto& [b, c] : crossings) out += num17(b) + ',' + num17(c) + '\n';
    return out;
}

}  // namespace gsbq
