#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stringmass {

/// Left string occupies [-1, 0], right string occupies [0, 1].
enum class Side { Left, Right };

std::string_view to_string(Side side);

struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
};

Interval side_interval(Side side);

/// Physical role of a profile, which decides its admissibility test.
enum class CoefficientRole { Density, Tension, Potential };

enum class ProfileKind { Constant, Polynomial, Samples };

/// Parsed description of a profile, before validation.
struct ProfileSpec {
    ProfileKind kind = ProfileKind::Constant;
    double value = 1.0;              // Constant
    std::vector<double> coeffs;      // Polynomial, ascending degree in x
    std::vector<double> xs, ys;      // Samples

    static ProfileSpec constant(double v);
    static ProfileSpec polynomial(std::vector<double> ascending);
    static ProfileSpec samples(std::vector<double> x, std::vector<double> y);
};

/// One coefficient (rho, sigma or q) on one side.
///
/// Sampled profiles are interpolated by a piecewise cubic Hermite rule whose
/// nodal slopes come from second-order three-point differences, so the
/// interpolant is C^1.
class CoefficientProfile {
public:
    CoefficientProfile() = default;

    Side side() const { return side_; }
    ProfileKind kind() const { return spec_.kind; }
    const ProfileSpec& spec() const { return spec_; }

    double value(double x) const;
    double derivative(double x) const;

    /// Same profile multiplied by a positive constant.
    CoefficientProfile scaled(double factor) const;

    /// Profile mirrored onto the other side: p'(x) = p(-x).
    CoefficientProfile reflected() const;

    /// n+1 equispaced samples over the side interval.
    ProfileSpec dense_samples(int n) const;

    friend CoefficientProfile build_profile(const ProfileSpec&, Side, CoefficientRole);

private:
    Side side_ = Side::Left;
    ProfileSpec spec_;
    std::vector<double> slopes_;  // Hermite slopes at sample nodes
};

/// Validates a description and returns an evaluable profile.
///
/// Density and tension must be > 0 and potentials >= 0 on a 10^4-point
/// validation grid; sampled abscissae must be strictly increasing and cover
/// the side interval.
CoefficientProfile build_profile(const ProfileSpec& spec, Side side, CoefficientRole role);

/// Integral of sqrt(rho/sigma) over the side interval (travel time).
double optical_length(const CoefficientProfile& rho, const CoefficientProfile& sigma);

struct SideCoefficients {
    CoefficientProfile rho;
    CoefficientProfile sigma;
    CoefficientProfile q;
};

/// Full physical description of the string-mass-string system.
class SystemConfig {
public:
    SystemConfig(SideCoefficients left, SideCoefficients right, double mass);

    const SideCoefficients& left() const { return left_; }
    const SideCoefficients& right() const { return right_; }
    const SideCoefficients& side(Side s) const { return s == Side::Left ? left_ : right_; }
    double mass() const { return mass_; }
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }
    double total_optical_length() const { return gamma1_ + gamma2_; }

    SystemConfig with_mass(double mass) const;

    /// Unit coefficients rho = sigma = 1, q = 0 on both sides.
    static SystemConfig unit(double mass);

private:
    SideCoefficients left_;
    SideCoefficients right_;
    double mass_;
    double gamma1_;
    double gamma2_;
};

SideCoefficients build_side(Side side, const ProfileSpec& rho, const ProfileSpec& sigma,
                            const ProfileSpec& q);

} // namespace stringmass
