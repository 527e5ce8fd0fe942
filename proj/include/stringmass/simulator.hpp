#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stringmass/coefficients.hpp"
#include "stringmass/modes.hpp"
#include "stringmass/signal.hpp"

namespace stringmass {

inline constexpr double kCflFactor = 0.9;

struct SimulationOptions {
    double T = 1.0;
    double dx = 1.0 / 512;
    double dt = 0.0;  // 0 selects the CFL limit
    std::optional<ControlSignal> control;  // Dirichlet value at x = 1; absent means v(1) = 0
    int snapshots = 11;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> w;
};

/// Leapfrog run on the junction-aligned grid x_j = -1 + j dx, j = 0..2/dx.
/// Node `junction` carries u(0) = v(0) = z.
struct Trajectory {
    std::vector<double> x;
    int junction = 0;
    double dx = 0.0;
    double dt = 0.0;
    int steps = 0;
    double T = 0.0;

    std::vector<double> t;      // t_k = k dt, k = 0..steps
    std::vector<double> trace;  // v_x(1, t_k), one-sided second order
    std::vector<double> z;      // junction displacement at t_k
    std::vector<double> energy_t;  // t_{k+1/2}
    std::vector<double> energy;    // discrete energy, conserved exactly without control
    std::vector<Snapshot> snapshots;

    std::vector<double> w_initial, w_first;  // levels 0 and 1
    std::vector<double> w_prev, w_final;     // levels steps-1 and steps
    std::vector<double> velocity_final;

    double trace_integral() const;
    double z_final() const { return w_final[junction]; }
    double zt_final() const { return velocity_final[junction]; }
};

/// Largest admissible time step, kCflFactor * dx * min sqrt(rho / sigma).
double cfl_limit(const SystemConfig& config, double dx);

/// Throws CFLViolation if options.dt exceeds cfl_limit, CompatibilityViolation for
/// mismatched junction data, NonFiniteState on blow-up. 1/dx must be an integer >= 4.
Trajectory simulate(const SystemConfig& config, const InitialData& initial, const SimulationOptions& options);

/// Uncontrolled run backwards from the final two levels of `forward`; the result's
/// w_final approximates forward.w_initial.
Trajectory reverse(const SystemConfig& config, const Trajectory& forward);

/// Piecewise-linear initial data built from the final displacement and velocity.
InitialData final_state(const Trajectory& traj);

/// Columns t, x, w for every snapshot.
void write_snapshot_csv(const Trajectory& traj, const std::string& path);
/// Columns t, vx1.
void write_trace_csv(const Trajectory& traj, const std::string& path);
/// Columns t, E.
void write_energy_csv(const Trajectory& traj, const std::string& path);

} // namespace stringmass
