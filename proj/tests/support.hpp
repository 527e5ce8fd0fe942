#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "stringmass/coefficients.hpp"

namespace testsupport {

using namespace stringmass;

inline SystemConfig unit_config(double mass = 1.0) { return SystemConfig::unit(mass); }

/// rho1 = 1 + 0.2 x^2, mirrored onto the right, sigma = 1 + 0.1 x^2, q = 0.3.
inline SystemConfig symmetric_smooth_config(double mass = 1.0)
{
    const auto rho = ProfileSpec::polynomial({1.0, 0.0, 0.2});
    const auto sigma = ProfileSpec::polynomial({1.0, 0.0, 0.1});
    const auto q = ProfileSpec::constant(0.3);
    return SystemConfig(build_side(Side::Left, rho, sigma, q), build_side(Side::Right, rho, sigma, q), mass);
}

/// Smooth, non-symmetric configuration.
inline SystemConfig skew_config(double mass = 1.0)
{
    return SystemConfig(
        build_side(Side::Left, ProfileSpec::polynomial({1.0, 0.2, 0.1}), ProfileSpec::constant(1.0),
                   ProfileSpec::constant(0.0)),
        build_side(Side::Right, ProfileSpec::polynomial({1.5, 0.3}), ProfileSpec::polynomial({1.0, 0.1}),
                   ProfileSpec::constant(0.5)),
        mass);
}

/// Shipped default: non-symmetric coefficients with equal optical lengths 0.9.
inline SystemConfig default_config(double mass = 1.0)
{
    return SystemConfig(
        build_side(Side::Left, ProfileSpec::polynomial({1.0, 0.4, 0.04}), ProfileSpec::constant(1.0),
                   ProfileSpec::constant(0.0)),
        build_side(Side::Right, ProfileSpec::polynomial({0.81, 0.405}), ProfileSpec::polynomial({1.0, 0.5}),
                   ProfileSpec::constant(0.5)),
        mass);
}

/// Unit tension, rho1 = 1, rho2 = 2: side lengths in irrational ratio.
inline SystemConfig irrational_config(double mass = 1.0)
{
    const auto one = ProfileSpec::constant(1.0);
    const auto zero = ProfileSpec::constant(0.0);
    return SystemConfig(build_side(Side::Left, one, one, zero),
                        build_side(Side::Right, ProfileSpec::constant(2.0), one, zero), mass);
}

/// Random smooth quadratic profiles with values in [0.5, 2].
inline SystemConfig random_config(std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> base(0.8, 1.6), tilt(-0.25, 0.25), pot(0.0, 1.0), mass(0.3, 3.0);
    auto poly = [&] { return ProfileSpec::polynomial({base(gen), tilt(gen), tilt(gen)}); };
    auto left = build_side(Side::Left, poly(), poly(), ProfileSpec::constant(pot(gen)));
    auto right = build_side(Side::Right, poly(), poly(), ProfileSpec::constant(pot(gen)));
    return SystemConfig(left, right, mass(gen));
}

} // namespace testsupport
