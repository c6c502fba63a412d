#pragma once

#include <span>

namespace gsbq {

/// Nonlinearity family: Odd is f(u) = |u|^(p-1) u, Even is f(u) = |u|^p.
enum class Parity { Odd, Even };

enum class NonlinPart { Value, Slope, Primitive };  // f, f', F with F' = f, F(0) = 0

struct WaveParams {
    double beta = 0;
    double c = 0;
    double p = 2;
    Parity parity = Parity::Odd;
};

/// Largest admissible beta at speed c: 2 sqrt(1 - c^2).
double beta_star(double c);

/// Supremum of admissible speeds at fixed beta: sqrt(1 - max(beta,0)^2 / 4).
double c_star(double beta);

bool params_valid(const WaveParams& wp) noexcept;
void validate(const WaveParams& wp);  // throws DomainError

double nonlinearity_eval(double u, double p, Parity parity, NonlinPart which);
void nonlinearity_apply(std::span<double> dst, std::span<const double> u, double p, Parity parity,
                        NonlinPart which);

/// f' is continuous at 0 but not differentiable there when p < 2.
bool nonlinearity_smooth(double p) noexcept;

enum class DecayRegime { TwoRealRates, DoubleRate, OscillatoryRate };

struct DispersionConstants {
    double beta_star = 0;
    double c_star = 0;
    DecayRegime regime = DecayRegime::OscillatoryRate;
    // TwoRealRates: lambda1 < lambda2 solve  l^4 + beta l^2 + (1 - c^2) = 0.
    double lambda1 = 0;
    double lambda2 = 0;
    // OscillatoryRate: decay sigma = sqrt(beta_star - beta)/2, frequency
    // omega = sqrt(beta_star + beta)/2. DoubleRate: sigma = omega = sqrt(beta_star/2).
    double sigma = 0;
    double omega = 0;
};

DispersionConstants dispersion_constants(const WaveParams& wp);

/// Closed-form convolution kernel: inverse transform of
/// 1 / (xi^4 - beta xi^2 + 1 - c^2), picked by decay regime.
double kernel_eval(double x, double beta, double c);

/// Independent check: adaptive-panel Gauss-Legendre quadrature of the same
/// transform with a certified truncation tail below 1e-12.
double kernel_oracle(double x, double beta, double c);

}  // namespace gsbq
