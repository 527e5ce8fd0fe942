#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stringmass/gap_analysis.hpp"
#include "stringmass/spectrum.hpp"

namespace stringmass {

/// Representation used for an eigenfunction.
///
/// Fused: phi = sigma2(0) v~_x(0) u~ on the left, sigma1(0) u~_x(0) v~ on the right.
/// Generic: phi = sqrt(lambda) (v~(0) u~ on the left, u~(0) v~ on the right).
/// Neither is normalized; normH0 carries the scale.
enum class Branch { Fused, Generic };

std::string_view to_string(Branch b);

/// Sampled eigenfunction on both sides of the junction.
///
/// Side arrays use increasing x and share the node x = 0, where the two
/// one-sided derivatives differ by the mass jump.
struct ModeShape {
    int n = 0;
    double lambda = 0.0;
    Branch branch = Branch::Generic;
    std::vector<double> x_left, phi_left, dphi_left;
    std::vector<double> x_right, phi_right, dphi_right;
    double phi0 = 0.0;
    double slope1 = 0.0;       // phi'(1)
    double normW = 0.0;        // int |phi'|^2 over both sides
    double normH0 = 0.0;       // int rho phi^2 + M phi(0)^2
    double energy_form = 0.0;  // int sigma |phi'|^2 + q phi^2, equals lambda * normH0
    double jump_residual = 0.0;

    /// C1 cubic Hermite interpolation of phi from the samples and slopes.
    double value(double x) const;
    double derivative(double x) const;
};

/// Builds mode n (1-based) of the table and checks continuity, the jump
/// condition and phi'(1) != 0.
ModeShape assemble_mode(int n, const SpectrumTable& table, const Shooter& shooter);
ModeShape assemble_mode(int n, const SpectrumTable& table, const SystemConfig& config);

/// Modes 1..count, assembled in parallel.
std::vector<ModeShape> assemble_modes(int count, const SpectrumTable& table, const Shooter& shooter);

/// phi_n'(1) directly from junction data: -sigma1(0) u~_x(0) (fused) or
/// -sqrt(lambda) u~(0) (generic).
double boundary_slope(int n, const SpectrumTable& table, const Shooter& shooter);

struct EnergyNorms {
    double normW = 0.0;
    double normH0 = 0.0;
    double energy_form = 0.0;
};

/// Simpson quadrature on the mode grid.
EnergyNorms energy_norms(const ModeShape& mode, const SystemConfig& config);

/// H0 inner product of two modes sampled on the same grid.
double h0_inner(const ModeShape& a, const ModeShape& b, const SystemConfig& config);

/// |(left, right, z)|^2_H0 by quadrature on the grid of `grid`.
double h0_norm_sq(const std::function<double(double)>& left, const std::function<double(double)>& right, double z,
                  const ModeShape& grid, const SystemConfig& config);

/// Gram matrix of H0 inner products.
Eigen::MatrixXd orthogonality_matrix(const std::vector<ModeShape>& modes, const SystemConfig& config);

/// Largest |G_ij| / sqrt(G_ii G_jj) over i != j.
double max_normalized_offdiagonal(const Eigen::MatrixXd& gram);

/// Two-sided modal coefficients a_n, n = +-1..+-count.
struct ModalData {
    std::vector<std::complex<double>> pos;  // a_n, n = 1..count
    std::vector<std::complex<double>> neg;  // a_{-n}, n = 1..count
    std::vector<double> e;                  // e~_n when built from real data
    std::vector<double> f;                  // f~_n when built from real data

    int count() const { return static_cast<int>(pos.size()); }
    std::complex<double> a(int n) const;
    void set(int n, std::complex<double> value);

    /// a_n = (e - i f) / 2, a_{-n} = conj(a_n).
    static ModalData from_real(std::vector<double> e, std::vector<double> f);
    /// Conjugate-symmetric data with the given positive-index coefficients.
    static ModalData conjugate_symmetric(std::vector<std::complex<double>> positive);
    static ModalData zeros(int count);
};

/// Initial state: displacement and velocity on each side plus the mass.
struct InitialData {
    std::function<double(double)> u0, v0, u1, v1;
    double z0 = 0.0;
    double z1 = 0.0;

    static InitialData zero();
};

/// Throws CompatibilityViolation if z0 differs from u0(0) or v0(0) by more
/// than 1e-8 (relative to the data scale).
void check_compatibility(const InitialData& data);

/// e~_n = <U0, Phi_n>_H0 / |Phi_n|^2_H0 and f~_n = <U1, Phi_n>_H0 / (sqrt(lambda_n) |Phi_n|^2_H0).
ModalData fourier_coefficients(const InitialData& data, const std::vector<ModeShape>& modes,
                               const SystemConfig& config);

/// Initial data equal to sum_n (e~_n Phi_n, sqrt(lambda_n) f~_n Phi_n) over the given modes.
InitialData synthesize_initial_data(const ModalData& data, const std::vector<ModeShape>& modes);

/// a~_n = phi_n'(1) a_n with phi_{-n}'(1) = phi_n'(1).
std::complex<double> scaled_coefficient(const ModalData& data, const std::vector<double>& slopes, int n);

/// Squared asymmetric norm, summed over both index signs:
/// clusters contribute delta^2 (|a~_n|^2 + |a~_{n+1}|^2) + |a~_n + a~_{n+1}|^2,
/// separated indices |a~_n|^2.
double asymmetric_norm_sq(const ModalData& data, const GapClassification& cls, const SpectrumTable& table,
                          const std::vector<double>& slopes);

/// Squared norm in the Riesz coordinates: sum over clusters of |c|^2 + |d|^2 with
/// c = a~_n + a~_{n+1}, d = delta_n (a~_{n+1} - a~_n), plus |a~_n|^2 on B.
double riesz_coordinate_norm_sq(const ModalData& data, const GapClassification& cls, const SpectrumTable& table,
                                const std::vector<double>& slopes);

/// Stencils over (conj Phi_n, conj Phi_{n+1}):
/// q = ((1/2) / phi_n'(1), (1/2) / phi_{n+1}'(1)),
/// p = (-(1/2 delta) / phi_n'(1), (1/2 delta) / phi_{n+1}'(1)).
struct RieszPair {
    int n = 0;
    double delta = 0.0;
    std::array<double, 2> q{};
    std::array<double, 2> p{};

    /// Coordinates (c, d) with a_n conj Phi_n + a_{n+1} conj Phi_{n+1} = c q + d p.
    std::pair<std::complex<double>, std::complex<double>> coordinates(std::complex<double> an,
                                                                      std::complex<double> an1) const;
};

RieszPair riesz_vectors(int n, const GapClassification& cls, const SpectrumTable& table,
                        const std::vector<double>& slopes);

/// Leading-order high-frequency shape of mode n, evaluated on the mode grid.
struct AsymptoticFit {
    int n = 0;
    Branch branch = Branch::Generic;
    double error = 0.0;        // sup |phi - c psi| / sup |phi| with the least-squares c
    double other_error = 0.0;  // same with the formula of the other branch
    bool branch_mismatch = false;
};

std::vector<AsymptoticFit> verify_mode_asymptotics(const std::vector<ModeShape>& modes, const SystemConfig& config);

/// Columns x, phi, phi_prime; the junction appears once per side with its one-sided slope.
void write_mode_csv(const ModeShape& mode, const std::string& path);

/// Columns n, lambda, phi0, slope1, normW, normH0, branch.
void write_mode_summary_csv(const std::vector<ModeShape>& modes, const std::string& path);

} // namespace stringmass
