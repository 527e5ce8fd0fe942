#pragma once

#include <complex>
#include <string>
#include <vector>

#include "stringmass/modes.hpp"
#include "stringmass/signal.hpp"
#include "stringmass/simulator.hpp"

namespace stringmass {

inline constexpr int kDefaultControlModes = 16;
inline constexpr double kIllConditionedLimit = 1e12;
inline constexpr double kTruncationLossLimit = 0.01;

/// Moment conditions int_0^T p(s) exp(-i omega_k s) ds = target_k.
///
/// Entries are ordered n = 1..N, then n = -1..-N. With beta_n the H0 projection
/// onto Phi_n, the controlled system gives beta_n'' + lambda_n beta_n = gain_n p and
/// the targets zero eta_n = beta_n - i beta_n' / omega_n at time T.
struct MomentProblem {
    double T = 0.0;
    int modes = 0;
    std::vector<int> index;
    std::vector<double> omega;
    std::vector<double> gain;  // -sigma2(1) phi_n'(1) / |Phi_n|^2_H0
    std::vector<std::complex<double>> target;
    ModalData data;                 // a_n, n = 1..N
    std::vector<double> lambda;     // n = 1..N
    std::vector<double> norm_h0;    // n = 1..N
    double truncation_loss = 0.0;   // upper bound on the H0 x X_{-1} energy fraction beyond N
    bool truncation_too_aggressive = false;

    int size() const { return static_cast<int>(omega.size()); }
};

/// Targets target_{+-n} = -2 i omega_n a_n / g_n from modal data (first N entries used).
/// Throws TimeHorizonTooShort if T <= 2 (gamma1 + gamma2), InvalidArgument if fewer
/// than N modes are supplied.
MomentProblem modal_reduction(const ModalData& data, const std::vector<ModeShape>& modes, const SpectrumTable& table,
                              const SystemConfig& config, double T, int N);

/// Same, projecting sampled initial data first; fills the truncation diagnostics.
MomentProblem modal_reduction(const InitialData& initial, const std::vector<ModeShape>& modes,
                              const SpectrumTable& table, const SystemConfig& config, double T, int N);

/// G_{nk} = int_0^T exp(i (omega_k - omega_n) t) dt.
std::complex<double> gram_entry(double omega_n, double omega_k, double T);

/// Default Tikhonov weight 1e-10 trace(G) / (2N).
double default_regularization(const MomentProblem& problem);

struct ControlSolution {
    ControlSignal signal;
    std::vector<std::complex<double>> coeff;     // p(t) = sum_k coeff_k exp(i omega_k t)
    std::vector<std::complex<double>> achieved;  // G coeff
    double epsilon = 0.0;
    double condition = 0.0;        // of G + epsilon I
    double moment_residual = 0.0;  // max |achieved - target| / max(|target|, tiny)
    double l2_norm = 0.0;          // sqrt(coeff^H G coeff)
};

/// Min-norm solution of (G + epsilon I) c = target. epsilon < 0 selects the default;
/// samples <= 0 selects 160 samples per shortest period.
/// Throws IllConditioned if the condition estimate exceeds kIllConditionedLimit.
ControlSolution solve_min_norm(const MomentProblem& problem, double epsilon = -1.0, int samples = 0);

struct ControlRow {
    int n = 0;
    std::complex<double> target, achieved;
    double residual = 0.0;  // |achieved - target|
};

struct ControlReport {
    double duhamel_residual = 0.0;    // sum |eta_n(T)|^2 lambda_n |Phi_n|^2 over the same at t = 0
    double simulator_residual = 0.0;  // same ratio after projecting the simulated final state
    double mass_residual = 0.0;       // (|z(T)| + |z'(T)|) over the initial junction scale
    double l2_norm = 0.0;
    double condition = 0.0;
    bool simulated = false;
    std::vector<ControlRow> rows;
};

/// Residual modal energy ratio for final coefficients eta_n(T) = 2 a_n(T).
double modal_energy_ratio(const MomentProblem& problem, const ModalData& final_data);

/// Duhamel and simulator checks. The simulator path runs only when options.dx > 0;
/// its initial data is `initial`, and options.T / options.control are overwritten.
ControlReport verify_control(const ControlSolution& solution, const MomentProblem& problem,
                             const InitialData& initial, const std::vector<ModeShape>& modes,
                             const SystemConfig& config, SimulationOptions options);

/// Columns n, target_re, target_im, achieved_re, achieved_im, residual.
void write_control_report_csv(const ControlReport& report, const std::string& path);

} // namespace stringmass
