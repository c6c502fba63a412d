#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsbq/model.hpp"
#include "gsbq/petviashvili.hpp"

namespace gsbq {

enum class Classification { Stable, Unstable, NoSolitaryWave, Indeterminate };
enum class Provenance { DirectSolve, ScalingTransport };

std::string to_string(Classification c);
std::string to_string(Provenance p);

/// One sample of the wave-action surface d(beta, c) = E + cQ on the ground
/// state, with its first derivatives d_c = -c int phi^2, d_beta = -1/2 int
/// phi'^2. mass = int phi^2 is kept so d_c survives scaling transport through
/// c = 0, where d_c itself vanishes.
struct DPoint {
    double beta = 0;
    double c = 0;
    double d = 0;
    double d_c = 0;
    double d_beta = 0;
    std::optional<double> d_cc;
    Classification classification = Classification::Indeterminate;
    Provenance provenance = Provenance::DirectSolve;
    double mass = 0;
};

struct SurfaceOptions {
    double half_length = 200;
    std::size_t n_points = 4096;
    SolveOptions solve{};
    double init_amplitude = 1.0;
    double init_width = 5.0;
};

DPoint d_point(double beta, double c, double p, Parity parity, const SurfaceOptions& opt = {});

double default_c_step(double beta, double c);
double default_beta_step(double beta, double c);

/// Central difference of d_c in c; two extra solves.
double d_cc(double beta, double c, double p, Parity parity, double step,
            const SurfaceOptions& opt = {});

/// Move a sample along its semi-ellipse: (beta, c) -> (r beta, sqrt(1 - r^2
/// (1-c^2))) with d scaled by r^((3p+5)/(2(p-1))) and the first derivatives
/// transported by the differentiated scaling relations.
DPoint scaling_transport(const DPoint& point, double r, double p, Parity parity);

/// Speed c in (0,1) where d_cc changes sign along the semi-ellipse through
/// (beta0, 0), from surface data at the anchor; empty when the sign is
/// constant along the arc.
std::optional<double> sign_change_location(double beta0, double p, double d, double d_beta,
                                           double d_betabeta);

/// Same crossing computed from data at an interior point (c0 > 0) of the
/// ellipse instead of the c = 0 anchor.
std::optional<double> sign_change_from_point(double c0, double d_c, double d_cc);

enum class Segment { S1, S2, CustomEllipse };

struct SweepSpec {
    Segment segment = Segment::S1;
    double ellipse_k = 0;  // CustomEllipse: beta = k sqrt(1 - c^2)
    int samples = 31;
    double p = 2;
    Parity parity = Parity::Odd;
    bool with_dcc = true;
    SurfaceOptions opt{};
};

struct SweepRow {
    DPoint point;
    std::string error;  // nonempty when the point failed; sweep continues
};

/// Direct solves at evenly spaced parameters along the segment. S1 walks beta
/// over [-1, 2) at c = 0, S2 walks c over [0, 1) at beta = -1.
std::vector<SweepRow> sweep_segment(const SweepSpec& spec);

Classification classify_point(double beta, double c, double p, Parity parity,
                              std::optional<double> dcc = {}, std::optional<double> d = {});

struct NodalAtlas {
    std::vector<SweepRow> samples;
    std::vector<std::pair<double, double>> crossings;  // (beta, c) on the nodal curve
};

/// d_cc along both anchor segments, extended over the parameter region by
/// scaling transport along semi-ellipses, plus the interpolated zero-crossing
/// curve of d_cc.
NodalAtlas nodal_atlas(double p, Parity parity, int resolution, const SurfaceOptions& opt = {});

/// Near-boundary policy: for c > 0.9 c*(beta) the sample comes from the
/// anchor of its semi-ellipse by scaling transport instead of a direct solve.
DPoint d_point_auto(double beta, double c, double p, Parity parity,
                    const SurfaceOptions& opt = {});

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string crossings_csv(const std::vector<std::pair<double, double>>& crossings);

}  // namespace gsbq
