#pragma once

#include <vector>

namespace stringmass {

/// Least-squares slope of log(y) against log(x). Requires positive data.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);

/// Composite Simpson weights for n+1 equispaced samples with spacing h.
/// Falls back to Simpson plus one trapezoid panel when n is odd.
std::vector<double> simpson_weights(int n, double h);

/// Composite trapezoid weights for n+1 equispaced samples.
std::vector<double> trapezoid_weights(int n, double h);

/// Running integral of equispaced samples (trapezoid with end corrections
/// from the supplied derivative samples, fourth order when they are exact).
std::vector<double> cumulative_integral(const std::vector<double>& f, const std::vector<double>& df, double h);

} // namespace stringmass
