#include "gsbq/model.hpp"

#include <array>
#include <cmath>
#include <string>

#include "gsbq/errors.hpp"
#include "gsbq/parallel.hpp"

namespace gsbq {

double beta_star(double c) { return 2.0 * std::sqrt(1.0 - c * c); }

double c_star(double beta) {
    const double bp = beta > 0 ? beta : 0.0;
    return std::sqrt(1.0 - bp * bp / 4.0);
}

bool params_valid(const WaveParams& wp) noexcept {
    if (!(wp.p > 1.0)) return false;
    if (!(wp.c * wp.c < 1.0)) return false;
    if (!(wp.beta < beta_star(wp.c))) return false;
    return true;
}

void validate(const WaveParams& wp) {
    if (!(wp.p > 1.0))
        throw DomainError("nonlinearity exponent must satisfy p > 1, got " + std::to_string(wp.p));
    if (!(wp.c * wp.c < 1.0))
        throw DomainError("speed out of range: c^2 must be < 1, got c = " + std::to_string(wp.c));
    if (!(wp.beta < beta_star(wp.c)))
        throw DomainError("beta out of range: need beta < 2 sqrt(1 - c^2) = " +
                          std::to_string(beta_star(wp.c)) + ", got " + std::to_string(wp.beta));
}

bool nonlinearity_smooth(double p) noexcept { return p >= 2.0; }

double nonlinearity_eval(double u, double p, Parity parity, NonlinPart which) {
    const double a = std::abs(u);
    if (a == 0.0) return 0.0;
    if (parity == Parity::Odd) {
        switch (which) {
            case NonlinPart::Value: return std::pow(a, p - 1.0) * u;
            case NonlinPart::Slope: return p * std::pow(a, p - 1.0);
            case NonlinPart::Primitive: return std::pow(a, p + 1.0) / (p + 1.0);
        }
    } else {
        switch (which) {
            case NonlinPart::Value: return std::pow(a, p);
            case NonlinPart::Slope: return p * std::pow(a, p - 2.0) * u;
            case NonlinPart::Primitive: return std::pow(a, p) * u / (p + 1.0);
        }
    }
    return 0.0;
}

void nonlinearity_apply(std::span<double> dst, std::span<const double> u, double p, Parity parity,
                        NonlinPart which) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    if (par::backend() == par::Backend::OpenMP) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            dst[i] = nonlinearity_eval(u[i], p, parity, which);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            dst[i] = nonlinearity_eval(u[i], p, parity, which);
    }
}

DispersionConstants dispersion_constants(const WaveParams& wp) {
    validate(wp);
    DispersionConstants dc;
    dc.beta_star = beta_star(wp.c);
    dc.c_star = c_star(wp.beta);
    const double b = wp.beta, bs = dc.beta_star;
    if (std::abs(b + bs) <= 1e-12) {
        dc.regime = DecayRegime::DoubleRate;
        dc.sigma = dc.omega = std::sqrt(bs / 2.0);
    } else if (b < -bs) {
        dc.regime = DecayRegime::TwoRealRates;
        const double disc = std::sqrt(b * b - bs * bs);
        dc.lambda1 = std::sqrt((-b - disc) / 2.0);
        dc.lambda2 = std::sqrt((-b + disc) / 2.0);
    } else {
        dc.regime = DecayRegime::OscillatoryRate;
        dc.sigma = 0.5 * std::sqrt(bs - b);
        dc.omega = 0.5 * std::sqrt(bs + b);
    }
    return dc;
}

double kernel_eval(double x, double beta, double c) {
    WaveParams wp{beta, c, 2.0, Parity::Odd};
    if (!(wp.c * wp.c < 1.0) || !(beta < beta_star(c)))
        throw DomainError("kernel undefined outside c^2 < 1, beta < 2 sqrt(1 - c^2)");
    const DispersionConstants dc = dispersion_constants(wp);
    const double ax = std::abs(x);
    switch (dc.regime) {
        case DecayRegime::TwoRealRates: {
            const double l1 = dc.lambda1, l2 = dc.lambda2;
            return M_PI / (l2 * l2 - l1 * l1) *
                   (std::exp(-l1 * ax) / l1 - std::exp(-l2 * ax) / l2);
        }
        case DecayRegime::DoubleRate: {
            const double r = dc.sigma;  // sqrt(beta_star / 2)
            return M_PI * std::sqrt(2.0) / std::pow(dc.beta_star, 1.5) * (1.0 + r * ax) *
                   std::exp(-r * ax);
        }
        case DecayRegime::OscillatoryRate: {
            const double s = dc.sigma, w = dc.omega;
            return M_PI * std::exp(-s * ax) / (2.0 * s * w * (s * s + w * w)) *
                   (w * std::cos(w * x) + s * std::sin(w * ax));
        }
    }
    return 0.0;
}

namespace {

// 20-point Gauss-Legendre rule on [-1, 1], nodes by Newton on P_20.
struct GaussRule {
    std::array<double, 20> x{}, w{};
};

const GaussRule& gauss20() {
    static const GaussRule rule = [] {
        GaussRule r;
        const int n = 20;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0;
            for (int it = 0; it < 64; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            r.x[i] = t;
            r.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        return r;
    }();
    return rule;
}

// Composite rule with Kahan accumulation; panel width h.
double transform_quadrature(double x, double beta, double mass, double upper, double h) {
    const GaussRule& g = gauss20();
    double acc = 0, comp = 0;
    const std::size_t panels = static_cast<std::size_t>(std::ceil(upper / h));
    for (std::size_t pnl = 0; pnl < panels; ++pnl) {
        const double a = h * static_cast<double>(pnl);
        const double b = std::min(a + h, upper);
        const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
        double panel = 0;
        for (int i = 0; i < 20; ++i) {
            const double xi = mid + rad * g.x[i];
            const double x2 = xi * xi;
            panel += g.w[i] * std::cos(xi * x) / (x2 * x2 - beta * x2 + mass);
        }
        panel *= rad;
        const double y = panel - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return 2.0 * acc;  // even integrand, transform over the whole line
}

}  // namespace

double kernel_oracle(double x, double beta, double c) {
    if (!(c * c < 1.0) || !(beta < beta_star(c)))
        throw DomainError("kernel undefined outside c^2 < 1, beta < 2 sqrt(1 - c^2)");
    const double mass = 1.0 - c * c;
    // Beyond xi0 the denominator is at least xi^4/2, so cutting at 12000 leaves
    // a tail under 4e-13.
    const double upper = 12000.0;
    const double h = std::min(0.5, M_PI / (4.0 * std::max(std::abs(x), 1.0)));
    const double coarse = transform_quadrature(x, beta, mass, upper, h);
    const double fine = transform_quadrature(x, beta, mass, upper, 0.5 * h);
    if (std::abs(fine - coarse) > 1e-9)
        throw QuadratureNonConvergence("kernel quadrature failed to settle: |diff| = " +
                                       std::to_string(std::abs(fine - coarse)));
    return fine;
}

}  // namespace gsbq
