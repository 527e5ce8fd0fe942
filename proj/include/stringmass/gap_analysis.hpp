#pragma once

#include <string>
#include <vector>

#include "stringmass/spectrum.hpp"

namespace stringmass {

/// Membership of a positive index in the gap partition.
enum class SetLabel { A, APlus1, BPlus, BMinus };

std::string_view to_string(SetLabel label);

/// Partition of the indices 1..count of a spectrum table.
///
/// n in A: delta_{n-1} >= delta' and delta_n < delta'.
/// n in B: delta_{n-1} >= delta' and delta_n >= delta'.
/// Otherwise n = m+1 for some m in A.
/// Index 1 has left gap +inf and index count has right gap +inf.
/// Negative indices mirror positive ones: a cluster (n, n+1) maps to the
/// cluster (-(n+1), -n), so label(-(n+1)) = A whenever n is in A.
struct GapClassification {
    int count = 0;
    double delta_prime = 0.0;
    std::vector<int> A;
    std::vector<int> B;
    std::vector<int> Lambda;
    std::vector<int> LambdaStar;  // Lambda and its mirror, ascending
    std::vector<int> Bplus;       // mu_{n-1} from the right spectrum (or fused, or n = 1)
    std::vector<int> Bminus;      // mu_{n-1} from the left spectrum
    std::vector<SetLabel> labels; // labels[n-1] for n = 1..count

    SetLabel label(int n) const;
    bool in_A(int n) const { return label(n) == SetLabel::A; }
    bool in_B(int n) const;
    bool in_lambda_star(int n) const;
};

/// Half of the smallest two-step gap sqrt(lambda_{n+2}) - sqrt(lambda_n).
double max_delta_prime(const SpectrumTable& table);

/// 0.9 * max_delta_prime.
double default_delta_prime(const SpectrumTable& table);

/// Throws ThresholdTooLarge if delta' exceeds max_delta_prime or is not positive.
GapClassification classify_indices(const SpectrumTable& table, double delta_prime);
GapClassification classify_indices(const SpectrumTable& table);

/// Finite-N trend evidence for the gap and density asymptotics.
struct GapReport {
    double delta_prime = 0.0;
    double tau = 0.0;                        // median of mu_n - mu_{n-1}
    std::vector<int> a_indices;
    std::vector<double> n_delta_over_A;      // n * delta_n for n in A
    double max_n_delta_A = 0.0;
    double median_n_delta_A = 0.0;
    double min_two_step_gap = 0.0;           // min sqrt(lambda_{n+2}) - sqrt(lambda_n)
    std::vector<double> weyl_deviation;      // |sqrt(lambda_n) - n pi / (gamma1 + gamma2)|, n = 1..count
    double max_weyl_deviation = 0.0;
    std::vector<int> omega_indices;          // n >= 2 with mu_n - mu_{n-1} >= tau
    std::vector<double> omega_scaled;        // n * (sqrt(lambda_n) - sqrt(mu_{n-1}))
    double max_omega_scaled = 0.0;
};

/// Requires count >= 20 (InvalidArgument otherwise).
GapReport verify_gap_asymptotics(const SpectrumTable& table, const GapClassification& cls);

struct DensityEstimate {
    int n_plus = 0;
    double d_plus = 0.0;
};

/// Largest number of two-sided frequencies +-sqrt(lambda_n) inside a closed
/// window of length r, and that count divided by r.
/// Requires 0 < r <= sqrt(lambda_N) - sqrt(lambda_1).
DensityEstimate counting_density(const SpectrumTable& table, double r);

/// Columns n, delta_n, n_times_delta_n, set_label, lambda_in_Gamma_star.
void write_gap_csv(const SpectrumTable& table, const GapClassification& cls, const GapReport& report,
                   const std::string& path);

} // namespace stringmass
