#pragma once

#include <cstddef>

#include "gsbq/grid.hpp"
#include "gsbq/model.hpp"

namespace gsbq {

struct SolveOptions {
    int max_iterations = 1000;
    double increment_tol = 1e-12;  // sup increment relative to sup of iterate
    double m_tol = 1e-10;          // |M - 1| at acceptance
    bool dealias = true;           // 2/3 truncation of the nonlinear term
    bool skip_domain_check = false;  // test hook: run the iteration outside the
                                     // existence region and watch it fail
};

struct SolveDiagnostics {
    int iterations = 0;
    double final_increment = 0;
    double m_deviation = 0;    // |M - 1| on the last step
    double residual_sup = 0;   // sup of the profile equation residual
    double ik_gap_rel = 0;     // |I - K| / K
    double pohozaev_rel = 0;   // scaling-identity residual over K
    double boundary_tail = 0;  // max boundary-cell |phi| / sup |phi|
};

struct SolitaryWave {
    WaveParams params;
    RealField profile;
    SolveDiagnostics diagnostics;
};

RealField gaussian_init(const GridPtr& grid, double amplitude = 1.0, double width = 5.0);

/// Fixed-point iteration with the stabilizing ratio M = I/K and exponent
/// p/(p-1). Converged means the sup increment, |M - 1|, and the equation
/// residual all pass.
SolitaryWave petviashvili_solve(const WaveParams& params, const GridPtr& grid,
                                const RealField& init, const SolveOptions& opts = {});

/// Closed-form solitary profile available for integer p at the distinguished
/// beta = -((p+1)/2 + 2/(p+1)) sqrt(1-c^2):
///   phi(x) = A sech^(4/(p-1))(b x),
///   A = ((p+3)(3p+1) / (8(p+1)))^(1/(p-1)),
///   b = ((p-1) / (4(p+1))) sqrt(-(p^2+2p+5)/beta).
SolitaryWave exact_profile(int p, double c, const GridPtr& grid);

/// Sup norm of (1-c^2) phi + beta phi'' + phi'''' - f(phi).
double solitary_residual(const SolitaryWave& wave);

}  // namespace gsbq
