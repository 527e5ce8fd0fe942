#pragma once

#include <functional>
#include <string>
#include <vector>

namespace stringmass {

/// Real boundary signal sampled on a uniform grid of [0, T].
struct ControlSignal {
    std::vector<double> t;
    std::vector<double> p;
    double max_imag = 0.0;  // largest |Im p(t_k)| before the real part was kept

    double horizon() const { return t.empty() ? 0.0 : t.back(); }
    /// Trapezoid L2(0, T) norm of the samples.
    double l2_norm() const;
    /// Cubic B-spline interpolant of the samples; zero outside [0, T].
    std::function<double(double)> interpolant() const;
    /// One-off evaluation; builds the interpolant on every call.
    double value(double s) const { return interpolant()(s); }

    static ControlSignal zero(double T, int samples);
};

/// Columns t, p.
void write_signal_csv(const ControlSignal& signal, const std::string& path);

} // namespace stringmass
