#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "stringmass/gap_analysis.hpp"
#include "stringmass/modes.hpp"

namespace stringmass {

inline constexpr int kSamplesPerPeriod = 40;

/// Sampled two-sided exponential sum f(t) = sum_n c_n exp(i omega_n t) on [0, T],
/// with omega_{-n} = -omega_n and c_n = a_n phi_n'(1).
struct ExponentialSum {
    std::vector<int> index;
    std::vector<double> omega;
    std::vector<std::complex<double>> amp;
    double T = 0.0;
    std::vector<double> t;
    std::vector<std::complex<double>> samples;
    double integral = 0.0;  // trapezoid rule for int_0^T |f|^2
    double max_imag = 0.0;  // largest |Im f(t_k)|

    /// Minimum sample count satisfying the per-period resolution rule.
    static int required_samples(double T, double omega_max);
};

/// Samples the boundary trace v_x(1, t) of the free evolution of `data`.
/// Throws UnderResolvedTrace if fewer than 40 samples fall in the shortest period.
ExponentialSum boundary_trace(const ModalData& data, const std::vector<double>& slopes, const SpectrumTable& table,
                              double T, int samples);

/// Exact int_0^T |f|^2 from the pairwise closed-form integrals.
double closed_form_integral(const ExponentialSum& sum);

/// Bracketing quantity and ratios against the time integral.
struct SandwichReport {
    double T = 0.0;
    double lower = 0.0;  // equals `upper`: the squared asymmetric norm of the amplitudes
    double integral = 0.0;
    double upper = 0.0;
    double integral_over_lower = 0.0;
    double upper_over_integral = 0.0;
};

/// Throws TimeHorizonTooShort if T <= 2 pi d_plus.
SandwichReport ingham_sandwich(const ExponentialSum& sum, const ModalData& data, const std::vector<double>& slopes,
                               const GapClassification& cls, const SpectrumTable& table, double d_plus);

/// One Monte-Carlo draw.
struct ObservabilityTrial {
    int trial = 0;
    double integral = 0.0;
    double y_norm = 0.0;  // squared asymmetric norm
    double ratio = 0.0;
};

struct EmpiricalConstants {
    double T = 0.0;
    int n_modes = 0;
    std::uint64_t seed = 0;
    double delta_prime = 0.0;
    double d_plus = 0.0;
    bool horizon_ok = false;  // T > 2 (gamma1 + gamma2)
    double c_min = 0.0;
    double c_max = 0.0;
    std::vector<ObservabilityTrial> trials;
};

/// Random modal data for trial k: a_n = (g1 + i g2) / n, n = 1..n_modes, with
/// g1, g2 standard normal from mt19937_64 seeded by seed_seq{seed, k};
/// a_{-n} = conj(a_n).
ModalData random_modal_data(int n_modes, std::uint64_t seed, int trial);

/// Ratios int_0^T |v_x(1,t)|^2 dt / |U0|_Y^2 over independent trials.
EmpiricalConstants empirical_constants(const SystemConfig& config, double T, int n_modes, int trials,
                                       std::uint64_t seed);

/// Same experiment on a precomputed table (count >= n_modes + 1) and slopes.
EmpiricalConstants empirical_constants(const SpectrumTable& table, const std::vector<double>& slopes, double T,
                                       int n_modes, int trials, std::uint64_t seed);

/// Two-sided counting-density estimate over the widest window the table allows.
double density_estimate(const SpectrumTable& table);

/// Columns trial, integral, y_norm, ratio; header comments carry the run parameters.
void write_observability_csv(const EmpiricalConstants& ec, const std::string& path);

} // namespace stringmass
