#pragma once

#include "kdvlab/exec.hpp"
#include "kdvlab/numeric_verifier.hpp"

#include <vector>

namespace kdvlab {

struct EvolveOptions {
    int order = 1;
    double alpha = 0.1;
    double beta = 0.1;
    double t_final = 1.0;
    double dt = 0.0;         // <= 0 selects the default 0.25 * dx / c_max
    int snapshot_count = 21; // including the initial state
    Exec exec = Exec::serial;
};

struct Snapshot {
    double t;
    WaveField field;
};

struct EvolutionRun {
    EvolveOptions options;
    double dt_used = 0.0;
    std::vector<Snapshot> snapshots;
    std::vector<double> mass_series; // spatial mean of eta per snapshot
};

// Advective CFL bound dt <= dx / c_max. The linear dispersive part is
// integrated exactly by the integrating factor, so only the nonlinear
// advection restricts the step: c_max = 1 + (3/2)|alpha eta| +
// (3/8)|alpha eta|^2 + (3/16)|alpha eta|^3 per the order's nonlinear terms.
double stability_dt_bound(const WaveField& initial, int order, double alpha, double beta);

// Periodic pseudo-spectral integrator: integrating-factor classical RK4 in
// spectral space; every nonlinear product is formed on a 2N zero-padded grid,
// which removes aliasing for the quadratic and cubic terms alike.
EvolutionRun evolve(const WaveField& initial, const EvolveOptions& opts);

// Least-squares slope of the (unwrapped, sub-grid interpolated) peak position
// over the snapshot times. Needs >= 3 snapshots and a genuine peak.
double measure_velocity(const EvolutionRun& run);

struct CollisionReport {
    bool reseparated = false;
    double t_reseparation = 0.0;
    double min_peak_distance = 0.0;
    double radiation_rel = 0.0;   // L2 of (final - fitted pulses) / L2 of initial
    double shape_misfit = 0.0;    // worst per-pulse relative L2 misfit
    double fitted_A1 = 0.0, fitted_A2 = 0.0;
    WaveField initial_field;
    WaveField final_field;
    EvolutionRun run;
};

// Two first-order solitary waves (taller behind), evolved under the chosen
// order until they overtake and reseparate to 10 mean widths.
CollisionReport collision_experiment(int order, double alpha, double beta, double A1, double A2,
                                     double separation, double t_final = 0.0, int grid_n = 512,
                                     Exec exec = Exec::serial);

} // namespace kdvlab
