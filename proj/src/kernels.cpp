#include "gsbq/kernels.hpp"

#include <cmath>
#include <cstddef>

#include "gsbq/parallel.hpp"

namespace gsbq::kern {

namespace {
inline bool use_omp() { return par::backend() == par::Backend::OpenMP; }
using idx = std::ptrdiff_t;
}  // namespace

void mul_real(std::span<std::complex<double>> z, std::span<const double> w) {
    const idx n = static_cast<idx>(z.size());
    if (use_omp()) {
#pragma omp parallel for schedule(static)
        for (idx i = 0; i < n; ++i) z[i] *= w[i];
    } else {
        for (idx i = 0; i < n; ++i) z[i] *= w[i];
    }
}

void div_real(std::span<std::complex<double>> z, std::span<const double> w) {
    const idx n = static_cast<idx>(z.size());
    if (use_omp()) {
#pragma omp parallel for schedule(static)
        for (idx i = 0; i < n; ++i) z[i] /= w[i];
    } else {
        for (idx i = 0; i < n; ++i) z[i] /= w[i];
    }
}

void scale(std::span<double> x, double a) {
    const idx n = static_cast<idx>(x.size());
    if (use_omp()) {
#pragma omp parallel for schedule(static)
        for (idx i = 0; i < n; ++i) x[i] *= a;
    } else {
        for (idx i = 0; i < n; ++i) x[i] *= a;
    }
}

void scale(std::span<std::complex<double>> z, double a) {
    const idx n = static_cast<idx>(z.size());
    if (use_omp()) {
#pragma omp parallel for schedule(static)
        for (idx i = 0; i < n; ++i) z[i] *= a;
    } else {
        for (idx i = 0; i < n; ++i) z[i] *= a;
    }
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const idx n = static_cast<idx>(y.size());
    if (use_omp()) {
#pragma omp parallel for schedule(static)
        for (idx i = 0; i < n; ++i) y[i] += a * x[i];
    } else {
        for (idx i = 0; i < n; ++i) y[i] += a * x[i];
    }
}

void rotate_pair(std::span<std::complex<double>> u, std::span<std::complex<double>> v,
                 std::span<const double> cosv, std::span<const double> sin_div,
                 std::span<const double> sin_mul) {
    const idx n = static_cast<idx>(u.size());
    auto body = [&](idx i) {
        const double ur = u[i].real(), ui = u[i].imag();
        const double vr = v[i].real(), vi = v[i].imag();
        const double c = cosv[i], sd = sin_div[i], sm = sin_mul[i];
        u[i] = {c * ur - sd * vi, c * ui + sd * vr};
        v[i] = {c * vr - sm * ui, c * vi + sm * ur};
    };
    if (use_omp()) {
#pragma omp parallel for schedule(static)
        for (idx i = 0; i < n; ++i) body(i);
    } else {
        for (idx i = 0; i < n; ++i) body(i);
    }
}

double sup_abs(std::span<const double> x) {
    double m = 0;
    for (double t : x) m = std::max(m, std::abs(t));
    return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double sum(std::span<const double> x) {
    double s = 0;
    for (double t : x) s += t;
    return s;
}

}  // namespace gsbq::kern
