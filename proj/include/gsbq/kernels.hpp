#pragma once

#include <complex>
#include <span>

namespace gsbq::kern {

// Array map kernels. These honor par::backend(); every one has a serial loop
// and an OpenMP loop over independent elements, so the two backends produce
// bit-identical results. Reductions are deliberately serial-only: their value
// must not depend on the worker count.

void mul_real(std::span<std::complex<double>> z, std::span<const double> w);
void div_real(std::span<std::complex<double>> z, std::span<const double> w);
void scale(std::span<double> x, double a);
void scale(std::span<std::complex<double>> z, double a);
void axpy(double a, std::span<const double> x, std::span<double> y);  // y += a*x

// One step of the mode-wise linear group:
//   u' = cos*u + i*sin_div*v,  v' = i*sin_mul*u + cos*v
void rotate_pair(std::span<std::complex<double>> u, std::span<std::complex<double>> v,
                 std::span<const double> cosv, std::span<const double> sin_div,
                 std::span<const double> sin_mul);

double sup_abs(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);

}  // namespace gsbq::kern
