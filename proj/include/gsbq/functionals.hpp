#pragma once

#include "gsbq/grid.hpp"
#include "gsbq/model.hpp"
#include "gsbq/petviashvili.hpp"

namespace gsbq {

/// Flat summary of every functional evaluated on a wave; serialized as the
/// functionals report JSON.
struct FunctionalReport {
    double I = 0;         // int u_xx^2 - beta u_x^2 + (1-c^2) u^2
    double K = 0;         // (p+1) int F(u)
    double E = 0;         // energy of the pair
    double Q = 0;         // int u v
    double Q1 = 0;        // int u
    double Q2 = 0;        // int v
    double Q3_k1 = 0;     // int u * v_xx
    double action_L = 0;  // E + cQ rearranged through I and K
    double nehari_P = 0;  // I - K + int (cu + v)^2
    double m_ratio = 0;   // I / K^(2/(p+1))
    double d_value = 0;   // (p-1)/(2(p+1)) K
};

double functional_I(const RealField& u, double beta, double c);
double functional_K(const RealField& u, double p, Parity parity);

/// E, Q, Q1, Q2 and the k=1 higher moment on an arbitrary pair.
FunctionalReport conserved_quantities(const StatePair& w, const WaveParams& wp);

struct ActionNehari {
    double action_L = 0;
    double nehari_P = 0;
};

/// L = I/2 - K/(p+1) + (1/2) int (cu+v)^2 and its radial derivative
/// P = I - K + int (cu+v)^2.
ActionNehari action_and_nehari(const StatePair& w, const WaveParams& wp);

/// |int 3 phi''^2 - beta phi'^2 - (1-c^2) phi^2 + 2F(phi)| / K(phi).
double pohozaev_residual(const SolitaryWave& wave);

/// Quadratic form of the linearized operator pair at the wave:
///   int u1'' u2'' - beta u1' u2' + (1-c^2) u1 u2 - f'(phi) u1 u2
///   + int (c u1 + v1)(c u2 + v2).
double h_quadratic_form(const StatePair& w1, const StatePair& w2, const SolitaryWave& wave);

struct InstabilityDirections {
    double dir_i_value = 0;   // form on (phi, c phi)
    double dir_ii_value = 0;  // form on (phi + 2x phi', -c (phi + 2x phi'))
    double q_orth_i = 0;      // momentum-gradient pairing, vanishes analytically
    double q_orth_ii = 0;
};

InstabilityDirections instability_direction_forms(const SolitaryWave& wave);

/// Everything at once for a solved wave, with the pair (phi, -c phi).
FunctionalReport functional_report(const SolitaryWave& wave);

}  // namespace gsbq
