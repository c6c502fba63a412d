#pragma once

#include <cstdint>
#include <vector>

#include "gsbq/grid.hpp"
#include "gsbq/model.hpp"

namespace gsbq {

/// Relative drifts of the conserved quantities against their t = 0 values.
struct MonitorRow {
    double t = 0;
    double e_drift = 0;
    double q_drift = 0;
    double q1_drift = 0;
    double q2_drift = 0;
    double q3_drift = 0;
    double x_size = 0;  // h2(u) + l2(v) at this time
};

struct EvolveOptions {
    double t_final = 1.0;
    double dt = 1e-3;
    int record_every = 100;       // steps between monitor rows
    bool dealias = true;          // 2/3 truncation of the nonlinear term
    double blowup_factor = 1e6;   // stop once the state norm exceeds this
                                  // multiple of its initial value
    bool keep_snapshots = false;  // store the fields at every monitor row
};

struct EvolveResult {
    StatePair state;  // fields at t_reached
    double t_reached = 0;
    std::vector<MonitorRow> monitor;
    std::vector<StatePair> snapshots;  // aligned with monitor when kept
    bool blew_up = false;
};

/// Exact flow of the linear part, mode by mode:
///   uhat' = cos(theta) uhat + i sin(theta)/w vhat,
///   vhat' = i w sin(theta) uhat + cos(theta) vhat,
/// with w(xi) = sqrt(1 - beta xi^2 + xi^4) and theta = t xi w(xi). Needs
/// beta < 2 so the weight stays positive.
void linear_propagate(double beta, double t, StatePair& state);

/// Integrating-factor RK4 time stepper built on the exact linear group, with
/// the nonlinear term dealiased at every stage. A finite norm explosion past
/// blowup_factor stops the run and flags it; a non-finite state throws.
EvolveResult evolve(const WaveParams& params, const StatePair& initial, const EvolveOptions& opt);

struct OrbitalFit {
    double distance = 0;  // min over shifts r of h2(u - phi(.-r)) + l2(v + c phi(.-r))
    double shift = 0;     // minimizing r
};

/// Correlation scan over all grid shifts, then golden-section refinement of
/// the modulation distance.
OrbitalFit orbital_distance(const StatePair& state, const RealField& profile, double c);

enum class PerturbKind { Scale, BandlimitedNoise, DirectionI };

/// Initial data near the traveling pair (phi, -c phi):
///   Scale             (1+delta) (phi, -c phi)
///   BandlimitedNoise  pair plus seeded random modes with 0 < xi <= 2,
///                     sized delta * (h2 + l2 of the pair)
///   DirectionI        pair plus delta (phi, c phi)
StatePair make_perturbation(const RealField& profile, double c, PerturbKind kind, double delta,
                            std::uint64_t seed);

}  // namespace gsbq
