#include "stringmass/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "stringmass/error.hpp"

namespace stringmass {

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw NumericError(ErrorCode::InvalidArgument, "log-log fit needs >= 2 matching samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw NumericError(ErrorCode::InvalidArgument, "log-log fit needs positive samples");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double median(std::vector<double> v)
{
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> simpson_weights(int n, double h)
{
    if (n < 1) throw NumericError(ErrorCode::InvalidArgument, "quadrature needs >= 2 samples");
    std::vector<double> w(n + 1, 0.0);
    const int even = n % 2 ? n - 1 : n;
    for (int i = 0; i < even; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (even != n) {
        w[n - 1] += 0.5 * h;
        w[n] += 0.5 * h;
    }
    return w;
}

std::vector<double> trapezoid_weights(int n, double h)
{
    if (n < 1) throw NumericError(ErrorCode::InvalidArgument, "quadrature needs >= 2 samples");
    std::vector<double> w(n + 1, h);
    w.front() = w.back() = 0.5 * h;
    return w;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, const std::vector<double>& df, double h)
{
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]) + h * h / 12.0 * (df[i - 1] - df[i]);
    return out;
}

} // namespace stringmass
