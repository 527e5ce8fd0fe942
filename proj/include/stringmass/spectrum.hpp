#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stringmass/shooting.hpp"

namespace stringmass {

/// F(lambda) and the junction data it is built from.
struct CharacteristicValue {
    double lambda = 0.0;
    double F = 0.0;
    double u0 = 0.0;   // u~(0, lambda)
    double ux0 = 0.0;  // u~_x(0-, lambda)
    double v0 = 0.0;   // v~(0, lambda)
    double vx0 = 0.0;  // v~_x(0+, lambda)
    double F1 = 0.0;   // sigma1(0) u~_x / u~
    double F2 = 0.0;   // sigma2(0) v~_x / v~
};

/// Throws PoleProximity when |u~(0) v~(0)| falls below the guard after
/// rescaling by the junction slopes.
CharacteristicValue eval_characteristic(double lambda, const Shooter& shooter);
CharacteristicValue eval_characteristic(double lambda, const SystemConfig& config);

/// First `count` Dirichlet eigenvalues of one side, ascending.
std::vector<double> dirichlet_eigenvalues(Side side, int count, const Shooter& shooter);
std::vector<double> dirichlet_eigenvalues(Side side, int count, const SystemConfig& config);

/// Which side spectra contain a Dirichlet eigenvalue.
enum class MuTag { Left, Right, Both };

std::string_view to_string(MuTag tag);

struct TaggedMu {
    double value = 0.0;
    MuTag tag = MuTag::Left;
};

inline constexpr double kFusionTolerance = 1e-7;

/// Ascending merge; values closer than tol*(1+mu) across the lists are fused.
///
/// A fused value occupies two consecutive slots, both tagged Both, matching
/// the ordering with multiplicity 0 < mu_1 <= mu_2 <= ...
std::vector<TaggedMu> merge_spectra(const std::vector<double>& left, const std::vector<double>& right,
                                    double tol = kFusionTolerance);

/// Zeros of F (mass-free problem), one per slot n = 1..mu.size().
std::vector<double> regular_eigenvalues(const std::vector<TaggedMu>& mu, const Shooter& shooter);

/// Roots of F(lambda) = M lambda, one per slot n = 1..mu.size().
std::vector<double> mass_eigenvalues(const std::vector<TaggedMu>& mu, const Shooter& shooter);

/// Interleaved record of the three eigenvalue families. Index n is 1-based in
/// the accessors; the vectors are 0-based.
struct SpectrumTable {
    int count = 0;
    std::vector<TaggedMu> mu;
    std::vector<double> lambda_prime;
    std::vector<double> lambda;
    std::vector<double> delta;  // delta[n-1] = sqrt(lambda_{n+1}) - sqrt(lambda_n), size count-1
    double mass = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;

    double lam(int n) const { return lambda.at(n - 1); }
    double omega(int n) const;  // sqrt(lambda_n), with omega(-n) = -omega(n)
    double mu_at(int n) const { return mu.at(n - 1).value; }
    MuTag tag(int n) const { return mu.at(n - 1).tag; }
    /// delta_n for 1 <= n < count; +inf outside.
    double gap(int n) const;
    /// n is in Lambda: lambda_n coincides with a fused mu (the second slot of the pair).
    bool in_lambda(int n) const;
};

struct SpectrumOptions {
    int n_steps = kDefaultShootingSteps;
    double fusion_tol = kFusionTolerance;
};

/// Runs all finders, verifies interlacing and simplicity.
SpectrumTable build_spectrum_table(int count, const SystemConfig& config, const SpectrumOptions& opts = {});
SpectrumTable build_spectrum_table(int count, const Shooter& shooter, double fusion_tol = kFusionTolerance);

/// Copy of the table with lambda replaced by lambda' (the mass-free problem).
SpectrumTable mass_free_view(const SpectrumTable& table);

/// Columns n, mu, mu_tag, lambda_prime, lambda, sqrt_lambda, delta_n.
void write_spectrum_csv(const SpectrumTable& table, const std::string& path);

} // namespace stringmass
